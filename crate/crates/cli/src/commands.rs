use std::fs;
use std::sync::Arc;

use anyhow::Context;
use motkit_core::cellmot::{self, PosetSpec, StrataPoset};
use motkit_core::coxeter::{format_word, parse_word};
use motkit_core::milnork;
use motkit_core::smod::{self, SoergelCatalog};
use motkit_core::{
    build_coinvariant, torsion_primes, CartanType, CoinvariantAlgebra, HeckeAlgebra, LaurentPoly, RootDatum, WeylGroup,
};
use serde_json::{json, Value};

use crate::{cache, Cli, Command, Failure, Report, RunConfig};

type Out = Result<Report, Failure>;

fn cartan_type(cfg: &RunConfig) -> Result<CartanType, Failure> {
    let s = cfg.cartan.trim();
    let full = if s.len() > 1 { s.to_string() } else { format!("{s}{}", cfg.rank) };
    Ok(CartanType::parse(&full)?)
}

fn datum(cfg: &RunConfig) -> Result<RootDatum, Failure> {
    Ok(RootDatum::new(cartan_type(cfg)?)?)
}

fn group(cfg: &RunConfig) -> Result<Arc<WeylGroup>, Failure> {
    Ok(Arc::new(WeylGroup::new(datum(cfg)?)?))
}

fn algebra(cfg: &RunConfig) -> Result<Arc<CoinvariantAlgebra>, Failure> {
    Ok(Arc::new(build_coinvariant(&datum(cfg)?, cfg.prime)?))
}

fn word_arg(s: &str, rank: usize) -> Result<Vec<usize>, Failure> {
    let w = parse_word(s)?;
    if let Some(&bad) = w.iter().find(|&&g| g >= rank) {
        return Err(motkit_core::MotkitError::InvalidWord(format!("generator s{} exceeds the rank {rank}", bad + 1)).into());
    }
    Ok(w)
}

fn header(cfg: &RunConfig, with_prime: bool) -> Result<serde_json::Map<String, Value>, Failure> {
    let t = cartan_type(cfg)?;
    let mut m = serde_json::Map::new();
    m.insert("schema".into(), json!(1));
    m.insert("type".into(), json!(t.to_string()));
    if with_prime {
        m.insert("prime".into(), json!(cfg.prime));
    }
    Ok(m)
}

fn report(map: serde_json::Map<String, Value>) -> Report {
    Report { payload: Value::Object(map), warnings: Vec::new() }
}

/// A catalog preloaded from the cache directory, if any.
fn open_catalog(cfg: &RunConfig, warnings: &mut Vec<String>) -> Result<SoergelCatalog, Failure> {
    let mut catalog = SoergelCatalog::new(algebra(cfg)?, cfg.seed)?;
    if let Some(dir) = &cfg.cache {
        warnings.extend(cache::load(dir, &mut catalog));
    }
    Ok(catalog)
}

fn close_catalog(cfg: &RunConfig, catalog: &SoergelCatalog) -> Result<(), Failure> {
    if let Some(dir) = &cfg.cache {
        cache::store(dir, catalog).context("writing the cache")?;
    }
    Ok(())
}

fn hecke_json(h: &HeckeAlgebra, x: &motkit_core::HeckeElt) -> Value {
    serde_json::to_value(h.to_json(x)).expect("serializable")
}

fn kl_expansion(h: &HeckeAlgebra, x: &motkit_core::HeckeElt) -> Result<Value, Failure> {
    let g = h.group();
    let map: serde_json::Map<String, Value> =
        h.kl_expand(x)?.into_iter().map(|(w, p)| (g.element(w).to_string(), json!(p))).collect();
    Ok(Value::Object(map))
}

fn weyl(cfg: &RunConfig) -> Out {
    let g = group(cfg)?;
    let t = g.cartan_type();
    let mut m = header(cfg, false)?;
    m.insert("rank".into(), json!(t.rank));
    m.insert("order".into(), json!(g.order()));
    m.insert("coxeter_number".into(), json!(t.coxeter_number()));
    m.insert("degrees".into(), json!(t.degrees()));
    m.insert("length_counts".into(), json!(g.length_counts()));
    m.insert("torsion_primes".into(), json!(torsion_primes(&g.datum)));
    m.insert("longest".into(), json!(g.element(g.longest()).to_string()));
    let elements: Vec<Value> = g.elements().iter().map(|w| json!({"word": w.to_string(), "length": w.length()})).collect();
    m.insert("elements".into(), Value::Array(elements));
    Ok(report(m))
}

fn kl(cfg: &RunConfig, element: Option<&str>) -> Out {
    let g = group(cfg)?;
    let h = HeckeAlgebra::new(g.clone());
    let mut m = header(cfg, false)?;
    let targets: Vec<usize> = match element {
        Some(e) => vec![g.index_of_word(&word_arg(e, g.rank())?)?],
        None => (0..g.order()).collect(),
    };
    let basis: serde_json::Map<String, Value> =
        targets.iter().map(|&w| (g.element(w).to_string(), hecke_json(&h, &h.kl_basis(w)))).collect();
    m.insert("kl_basis".into(), Value::Object(basis));
    Ok(report(m))
}

fn bschar(cfg: &RunConfig, word: &str) -> Out {
    let g = group(cfg)?;
    let h = HeckeAlgebra::new(g.clone());
    let w = word_arg(word, g.rank())?;
    let ch = h.bs_character(&w)?;
    let mut m = header(cfg, false)?;
    m.insert("word".into(), json!(format_word(&w)));
    m.insert("character".into(), hecke_json(&h, &ch));
    m.insert("kl_expansion".into(), kl_expansion(&h, &ch)?);
    Ok(report(m))
}

fn coinv(cfg: &RunConfig) -> Out {
    let c = algebra(cfg)?;
    let mut m = header(cfg, true)?;
    m.insert("dims".into(), json!((0..=c.top).map(|n| [2 * n, c.dim(n)]).collect::<Vec<_>>()));
    m.insert("total".into(), json!(c.total_dim()));
    m.insert("torsion_primes".into(), json!(c.torsion_primes()));
    m.insert("prime_ok".into(), json!(c.prime_ok()));
    let mut report = report(m);
    if !c.prime_ok() {
        report.warnings.push(format!("p = {} is a torsion prime; C need not compute the Chow ring of the flag variety", cfg.prime));
    }
    Ok(report)
}

fn bs(cfg: &RunConfig, word: &str) -> Out {
    let c = algebra(cfg)?;
    let w = word_arg(word, c.rank())?;
    let module = smod::bott_samelson(&c, &w)?;
    let mut m = header(cfg, true)?;
    m.insert("word".into(), json!(format_word(&w)));
    m.insert("dims".into(), json!(module.dims_by_degree().into_iter().map(|(d, n)| [d as i64, n as i64]).collect::<Vec<_>>()));
    m.insert("total".into(), json!(module.total_dim()));
    m.insert("gdim".into(), json!(module.gdim()));
    Ok(report(m))
}

fn decompose(cfg: &RunConfig, word: &str) -> Out {
    let mut warnings = Vec::new();
    let mut catalog = open_catalog(cfg, &mut warnings)?;
    let g = catalog.group().clone();
    let w = word_arg(word, g.rank())?;
    let parts = catalog.labeled_decomposition(&w)?;
    // Σ v^{shift + ℓ(x) - l} ᵖb_x must reproduce b_{s1}⋯b_{sl}
    let mut character = motkit_core::HeckeElt::zero(g.cartan_type());
    for s in &parts {
        let mu = LaurentPoly::monomial(s.shift + g.length(s.element) as i32 - w.len() as i32, 1);
        character = character.add(&catalog.p_canonical(s.element)?.scale(&mu));
    }
    let consistent = character == catalog.hecke().bs_character(&w)?;
    let summands: Vec<Value> = parts
        .iter()
        .map(|s| {
            let rec = catalog.record(s.element).expect("classified summands have records");
            json!({
                "element": g.element(s.element).to_string(),
                "shift": s.shift,
                "gdim": rec.fingerprint.gdim,
                "certified": s.certified,
            })
        })
        .collect();
    close_catalog(cfg, &catalog)?;
    let mut m = header(cfg, true)?;
    m.insert("seed".into(), json!(cfg.seed));
    m.insert("word".into(), json!(format_word(&w)));
    m.insert("summands".into(), Value::Array(summands));
    m.insert("character_consistent".into(), json!(consistent));
    if parts.iter().any(|s| !s.certified) {
        warnings.push("some summands are only heuristically indecomposable".into());
    }
    if !consistent {
        return Err(anyhow::anyhow!("summands do not reproduce the Bott–Samelson character").into());
    }
    Ok(Report { payload: Value::Object(m), warnings })
}

fn pcan(cfg: &RunConfig, element: &str) -> Out {
    let mut warnings = Vec::new();
    let mut catalog = open_catalog(cfg, &mut warnings)?;
    let g = catalog.group().clone();
    let w = g.index_of_word(&word_arg(element, g.rank())?)?;
    let pb = catalog.p_canonical(w)?;
    let equals_kl = pb == catalog.hecke().kl_basis(w);
    close_catalog(cfg, &catalog)?;
    let mut m = header(cfg, true)?;
    m.insert("element".into(), json!(g.element(w).to_string()));
    m.insert("p_canonical".into(), hecke_json(catalog.hecke(), &pb));
    m.insert("kl_expansion".into(), kl_expansion(catalog.hecke(), &pb)?);
    m.insert("equals_kl".into(), json!(equals_kl));
    Ok(Report { payload: Value::Object(m), warnings })
}

fn validity_warning(valid: bool, warnings: &mut Vec<String>) {
    if !valid {
        warnings.push("category O preconditions fail (p must exceed the Coxeter number and avoid torsion primes); output forced".into());
    }
}

fn decmat(cfg: &RunConfig) -> Out {
    let mut warnings = Vec::new();
    let c = algebra(cfg)?;
    if !cfg.force {
        smod::category_o_precondition(&c)?;
    }
    let mut catalog = open_catalog(cfg, &mut warnings)?;
    let d = smod::decomposition_matrix(&mut catalog, cfg.force)?;
    close_catalog(cfg, &catalog)?;
    validity_warning(d.valid, &mut warnings);
    let mut m = header(cfg, true)?;
    m.insert("valid".into(), json!(d.valid));
    m.insert("elements".into(), json!(d.elements));
    m.insert("entries".into(), json!(d.entries));
    Ok(Report { payload: Value::Object(m), warnings })
}

fn simples(cfg: &RunConfig) -> Out {
    let mut warnings = Vec::new();
    let c = algebra(cfg)?;
    if !cfg.force {
        smod::category_o_precondition(&c)?;
    }
    let mut catalog = open_catalog(cfg, &mut warnings)?;
    let s = smod::simple_multiplicities(&mut catalog, cfg.force)?;
    close_catalog(cfg, &catalog)?;
    validity_warning(s.valid, &mut warnings);
    let mut m = header(cfg, true)?;
    m.insert("valid".into(), json!(s.valid));
    m.insert("elements".into(), json!(s.elements));
    m.insert("graded".into(), json!(s.graded));
    m.insert("ungraded".into(), json!(s.ungraded));
    m.insert("graded_inverse".into(), json!(s.graded_inverse));
    m.insert("inverse".into(), json!(s.inverse));
    Ok(Report { payload: Value::Object(m), warnings })
}

fn cellmot_cmd(poset: Option<&std::path::Path>, flag: Option<&str>, bundle: Option<usize>, closed: Option<&str>) -> Out {
    let (x, source) = match (poset, flag) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let spec: PosetSpec = serde_json::from_str(&text)
                .map_err(|e| motkit_core::MotkitError::Rejected(format!("{}: {e}", path.display())))?;
            (StrataPoset::from_spec(&spec)?, path.display().to_string())
        }
        (None, Some(f)) => {
            let t = CartanType::parse(f)?;
            (cellmot::flag_strata(&RootDatum::new(t)?)?, format!("flag {t}"))
        }
        (None, None) => unreachable!("clap requires --poset or --flag"),
    };
    let mut warnings = Vec::new();
    let mut m = serde_json::Map::new();
    m.insert("schema".into(), json!(1));
    m.insert("source".into(), json!(source));
    m.insert("strata".into(), json!(x.len()));
    m.insert("irreducible".into(), json!(x.is_irreducible()));
    m.insert("components".into(), json!(x.components()));
    m.insert("cohomology".into(), json!(cellmot::motivic_cohomology(&x)));
    if !x.is_irreducible() {
        warnings.push("poset has several open strata; the cell count formula is extended by additivity".into());
    }
    if let Some(n) = bundle {
        m.insert("bundle".into(), json!({"rank": n, "cohomology": cellmot::projective_bundle(&x, n)?}));
    }
    if let Some(labels) = closed {
        let labels: Vec<String> = labels.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
        let r = cellmot::localization_check(&x, &labels)?;
        m.insert("localization".into(), json!({"closed": labels, "report": r}));
        if !r.additive {
            return Err(anyhow::anyhow!("localization sequence is not additive").into());
        }
    }
    Ok(Report { payload: Value::Object(m), warnings })
}

pub fn execute(cli: &Cli) -> Out {
    let cfg = &cli.config;
    match &cli.command {
        Command::Weyl => weyl(cfg),
        Command::Kl { element } => kl(cfg, element.as_deref()),
        Command::Bschar { word } => bschar(cfg, word),
        Command::Coinv => coinv(cfg),
        Command::Bs { word } => bs(cfg, word),
        Command::Decompose { word } => decompose(cfg, word),
        Command::Pcan { element } => pcan(cfg, element),
        Command::Decmat => decmat(cfg),
        Command::Simples => simples(cfg),
        Command::Cellmot { poset, flag, bundle, closed } => {
            cellmot_cmd(poset.as_deref(), flag.as_deref(), *bundle, closed.as_deref())
        }
        Command::Milnork { q, n } => {
            let k = milnork::milnor_k(*q, *n)?;
            Ok(Report {
                payload: json!({"schema": 1, "q": q, "n": n, "invariants": k, "order": k.order()}),
                warnings: Vec::new(),
            })
        }
        Command::Tatehom { i, j } => {
            let t = milnork::tate_hom(u64::from(cfg.prime), *i, *j)?;
            let mut v = serde_json::to_value(&t).expect("serializable");
            v["schema"] = json!(1);
            Ok(Report { payload: v, warnings: Vec::new() })
        }
    }
}
