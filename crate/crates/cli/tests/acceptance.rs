//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::{Command, ExitCode, Output};
use std::sync::Arc;
use std::time::{Duration, Instant};

use anyhow::{anyhow, ensure, Context, Result};
use motkit_core::cellmot::{flag_strata, localization_check, motivic_cohomology, projective_bundle, BigradedDims, StrataPoset};
use motkit_core::milnork::{milnor_k, prime_power, tate_hom};
use motkit_core::smod::{bott_samelson, idempotent_count, EndAlgebra, LabeledSummand, SoergelCatalog};
use motkit_core::{build_coinvariant, build_root_datum, torsion_primes, LaurentPoly, WeylGroup};
use serde_json::Value;

struct Verdict {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Verdict {
    Verdict { ok: true, detail: detail.into() }
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict { ok, detail: detail.into() }
}

fn catalog(letter: &str, rank: usize, p: u32) -> Result<SoergelCatalog> {
    let datum = build_root_datum(letter, rank)?;
    let alg = Arc::new(build_coinvariant(&datum, p)?);
    Ok(SoergelCatalog::new(alg, 0)?)
}

fn words_up_to(rank: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &layer {
            for s in 0..rank {
                let mut x: Vec<usize> = w.clone();
                x.push(s);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn one_plus_v_pow(l: usize) -> LaurentPoly {
    let base = LaurentPoly::from_coeffs(0, &[1, 1]);
    (0..l).fold(LaurentPoly::one(), |acc, _| &acc * &base)
}

fn c1_coinvariant_dims() -> Result<Verdict> {
    let mut checked = Vec::new();
    for (letter, rank) in [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("G", 2)] {
        for p in [5u32, 7] {
            let datum = build_root_datum(letter, rank)?;
            if torsion_primes(&datum).contains(&p) {
                continue;
            }
            let c = build_coinvariant(&datum, p)?;
            let counts = WeylGroup::new(datum)?.length_counts();
            let dims: Vec<usize> = (0..=c.top).map(|i| c.dim(i)).collect();
            if dims != counts {
                return Ok(verdict(false, format!("{letter}{rank} p={p}: dims {dims:?}, lengths {counts:?}")));
            }
            checked.push(format!("{letter}{rank}/{p}"));
        }
    }
    Ok(pass(format!("dim C_2i = #{{l(w)=i}} for {}", checked.join(" "))))
}

fn c2_bott_samelson_dims() -> Result<Verdict> {
    let mut n = 0;
    for (letter, rank) in [("A", 2), ("B", 2)] {
        let alg = Arc::new(build_coinvariant(&build_root_datum(letter, rank)?, 5)?);
        for word in words_up_to(rank, 5) {
            let g = bott_samelson(&alg, &word)?.gdim();
            if g != one_plus_v_pow(word.len()) {
                return Ok(verdict(false, format!("{letter}{rank} word {word:?}: gdim {g}")));
            }
            n += 1;
        }
    }
    Ok(pass(format!("gdim BS = (1+v)^l for all {n} words of length <= 5")))
}

/// Per element, the multiset of `(label, shift)` for each reduced word.
type WordMultisets = Vec<(Vec<usize>, Vec<LabeledSummand>)>;

fn reduced_word_decompositions(cat: &mut SoergelCatalog) -> Result<Vec<(usize, WordMultisets)>> {
    let group = Arc::clone(cat.group());
    let datum = build_root_datum(&group.cartan_type().letter.to_string(), group.rank())?;
    let mut out = Vec::new();
    for (w, elt) in group.elements().iter().enumerate() {
        let mut per_word = Vec::new();
        for word in datum.reduced_words(elt, group.max_length())? {
            per_word.push((word.clone(), cat.labeled_decomposition(&word)?));
        }
        out.push((w, per_word));
    }
    Ok(out)
}

fn c3_reduced_word_independence() -> Result<Verdict> {
    let mut elements = 0;
    let mut literal_failures = Vec::new();
    let mut top_failures = Vec::new();
    for (letter, rank) in [("A", 2), ("B", 2)] {
        for p in [2u32, 3, 5] {
            let mut cat = catalog(letter, rank, p)?;
            let hecke = motkit_core::HeckeAlgebra::new(Arc::clone(cat.group()));
            for (w, per_word) in reduced_word_decompositions(&mut cat)? {
                elements += 1;
                let name = cat.group().element(w).to_string();
                let (first_word, first) = &per_word[0];
                for (word, multiset) in &per_word[1..] {
                    if multiset != first {
                        literal_failures.push(format!(
                            "{letter}{rank} p={p} {name}: {} vs {}",
                            render(&cat, first_word, first),
                            render(&cat, word, multiset)
                        ));
                    }
                }
                for (word, multiset) in &per_word {
                    let tops: Vec<_> = multiset.iter().filter(|s| s.element == w).collect();
                    let others_below = multiset.iter().all(|s| s.element == w || cat.group().bruhat_leq(s.element, w));
                    let mut character = motkit_core::HeckeElt::zero(cat.group().cartan_type());
                    for s in multiset {
                        let exp = s.shift + cat.group().length(s.element) as i32 - word.len() as i32;
                        character = character.add(&cat.p_canonical(s.element)?.scale(&LaurentPoly::monomial(exp, 1)));
                    }
                    let consistent = character == hecke.bs_character(word)?;
                    if tops.len() != 1 || tops[0].shift != 0 || !others_below || !consistent {
                        top_failures.push(format!("{letter}{rank} p={p} {}", render(&cat, word, multiset)));
                    }
                }
            }
        }
    }
    println!(
        "    note: top summand D_w once at shift 0, other labels below w, character consistent: {}",
        if top_failures.is_empty() { "holds for every reduced word".to_string() } else { top_failures.join("; ") }
    );
    if literal_failures.is_empty() {
        Ok(pass(format!("{elements} elements, identical (iso class, shift) multisets over reduced words")))
    } else {
        Ok(verdict(
            false,
            format!("{} of {elements} elements differ across reduced words, e.g. {}", literal_failures.len(), literal_failures[0]),
        ))
    }
}

fn render(cat: &SoergelCatalog, word: &[usize], multiset: &[LabeledSummand]) -> String {
    let parts: Vec<String> =
        multiset.iter().map(|s| format!("D_{{{}}}<{}>", cat.group().element(s.element), s.shift)).collect();
    format!("BS({}) = {}", motkit_core::coxeter::format_word(word), parts.join(" + "))
}

fn c4_kl_agreement() -> Result<Verdict> {
    let mut n = 0;
    for (letter, rank, p) in [("A", 2, 5u32), ("A", 2, 7), ("B", 2, 5)] {
        let mut cat = catalog(letter, rank, p)?;
        for w in 0..cat.group().order() {
            let pb = cat.p_canonical(w)?;
            if pb != cat.hecke().kl_basis(w) {
                return Ok(verdict(false, format!("{letter}{rank} p={p}: pb != b for {}", cat.group().element(w))));
            }
            n += 1;
        }
    }
    Ok(pass(format!("pb_w = b_w for all {n} elements of A2/p5, A2/p7, B2/p5")))
}

fn c5_p_canonical_sanity() -> Result<Verdict> {
    let mut n = 0;
    let mut differing = Vec::new();
    for (letter, rank) in [("A", 2), ("B", 2)] {
        for p in [2u32, 3, 5, 7] {
            let mut cat = catalog(letter, rank, p)?;
            let group = Arc::clone(cat.group());
            for w in 0..group.order() {
                let pb = cat.p_canonical(w)?;
                let hecke = cat.hecke();
                let name = group.element(w).to_string();
                ensure!(hecke.is_bar_invariant(&pb)?, "{letter}{rank} p={p} {name}: not bar invariant");
                ensure!(pb.has_nonnegative_coefficients(), "{letter}{rank} p={p} {name}: negative coefficient");
                ensure!(pb.coeff(w) == LaurentPoly::one(), "{letter}{rank} p={p} {name}: diagonal {}", pb.coeff(w));
                ensure!(pb.support().all(|y| group.bruhat_leq(y, w)), "{letter}{rank} p={p} {name}: support not below w");
                let diff = hecke.kl_expand(&pb.sub(&hecke.kl_basis(w)))?;
                ensure!(
                    diff.values().all(LaurentPoly::has_nonnegative_coefficients),
                    "{letter}{rank} p={p} {name}: pb - b has a negative KL coefficient"
                );
                if !diff.values().all(LaurentPoly::is_zero) {
                    differing.push(format!("{letter}{rank}/p{p} {name}"));
                }
                n += 1;
            }
        }
    }
    Ok(pass(format!(
        "{n} elements: bar invariant, nonnegative, unitriangular; pb != b only for {}",
        if differing.is_empty() { "none".into() } else { differing.join(", ") }
    )))
}

fn c6_locality() -> Result<Verdict> {
    let mut max_dim = 0;
    let mut n = 0;
    for (letter, rank) in [("A", 2), ("B", 2)] {
        let mut cat = catalog(letter, rank, 5)?;
        for w in 0..cat.group().order() {
            let m = cat.indecomposable(w)?.module.clone();
            max_dim = max_dim.max(EndAlgebra::new(&m)?.dim());
            match idempotent_count(&m, 1 << 24)? {
                Some(2) => n += 1,
                other => {
                    return Ok(verdict(false, format!("{letter}{rank} {}: idempotent count {other:?}", cat.group().element(w))))
                }
            }
        }
    }
    Ok(pass(format!("End_0(D_w) has only 0 and 1 as idempotents for {n} modules (dim End_0 <= {max_dim})")))
}

fn c7_milnor() -> Result<Verdict> {
    let qs: Vec<u64> = (2..=16).filter(|&q| prime_power(q).is_some()).collect();
    for &q in &qs {
        ensure!(milnor_k(q, 2)?.is_trivial(), "K_2(F_{q}) is not trivial");
        let k1 = milnor_k(q, 1)?;
        let expected = if q == 2 { vec![] } else { vec![q - 1] };
        ensure!(k1.0 == expected, "K_1(F_{q}) = {:?}", k1.0);
    }
    let mut cells = 0;
    for p in [2u64, 3, 5, 7] {
        for i in -3..=3 {
            for j in -3..=3 {
                let t = tate_hom(p, i, j)?;
                ensure!(t.dim == usize::from(i == 0 && j == 0), "Hom(1, 1({i})[{j}]) at p={p} has dim {}", t.dim);
                cells += 1;
            }
        }
    }
    Ok(pass(format!("K_2 trivial and K_1 = Z/(q-1) for q in {qs:?}; tate_hom is a delta on {cells} cells")))
}

fn c8_cellular() -> Result<Verdict> {
    let flag = flag_strata(&build_root_datum("A", 2)?)?;
    let expected = BigradedDims(BTreeMap::from([((0, 0), 1), ((2, 1), 2), ((4, 2), 2), ((6, 3), 1)]));
    let got = motivic_cohomology(&flag);
    ensure!(got == expected, "flag A2 cohomology {:?}", got.triples());
    let point = StrataPoset::projective_space(1);
    for n in 1..=4 {
        let bundle = projective_bundle(&point, n)?;
        let cells = motivic_cohomology(&StrataPoset::projective_space(n));
        ensure!(bundle == cells, "{n}-cell poset: bundle {:?} vs cells {:?}", bundle.triples(), cells.triples());
    }
    let downs = flag.down_sets();
    for set in &downs {
        let labels: Vec<String> = set.iter().map(|&i| flag.strata()[i].label.clone()).collect();
        let report = localization_check(&flag, &labels)?;
        ensure!(report.additive, "localization fails for closed part {labels:?}");
    }
    Ok(pass(format!("flag A2 table matches; bundles over a point match the n-cell posets for n <= 4; localization over {} down-sets", downs.len())))
}

fn motkit(args: &[&str], cache: Option<&Path>) -> Result<Output> {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_motkit"));
    cmd.args(args).env_remove("MOTKIT_CACHE");
    if let Some(dir) = cache {
        cmd.arg("--cache").arg(dir);
    }
    cmd.output().context("running motkit")
}

fn json(out: &Output) -> Result<Value> {
    serde_json::from_slice(&out.stdout).context("parsing motkit output")
}

fn poly(v: &Value) -> Result<LaurentPoly> {
    Ok(serde_json::from_value(v.clone())?)
}

fn c9_category_o_gate() -> Result<Verdict> {
    let refused = [("A2", 2), ("A2", 3), ("B2", 3), ("G2", 5), ("B3", 2), ("B3", 5)];
    for (t, p) in refused {
        let ps = p.to_string();
        let out = motkit(&["decmat", "--type", t, "--prime", &ps], None)?;
        ensure!(out.status.code() == Some(2), "decmat {t} p={p} exited with {:?}", out.status.code());
    }
    let out = motkit(&["decmat", "--type", "A2", "--prime", "5"], None)?;
    ensure!(out.status.success(), "decmat A2 p=5 failed: {}", String::from_utf8_lossy(&out.stderr));
    let d = json(&out)?;
    let elements = d["elements"].as_array().ok_or_else(|| anyhow!("missing elements"))?;
    let w0 = elements.iter().position(|e| e == "s1 s2 s1").ok_or_else(|| anyhow!("no longest element"))?;
    let entry = poly(&d["entries"][0][w0])?;
    ensure!(entry == LaurentPoly::monomial(3, 1), "entry (e, w0) = {entry}");

    let out = motkit(&["simples", "--type", "A2", "--prime", "5"], None)?;
    ensure!(out.status.success(), "simples A2 p=5 failed");
    let s = json(&out)?;
    let parse = |key: &str| -> Result<Vec<Vec<i64>>> { Ok(serde_json::from_value(s[key].clone())?) };
    let (a, inv) = (parse("ungraded")?, parse("inverse")?);
    let n = a.len();
    for i in 0..n {
        for j in 0..n {
            let g = poly(&s["graded"][i][j])?;
            ensure!(j >= i || g.is_zero(), "graded matrix not upper triangular at ({i}, {j})");
            ensure!(i != j || g == LaurentPoly::one(), "diagonal entry {i} is {g}");
            let prod: i64 = (0..n).map(|k| a[i][k] * inv[k][j]).sum();
            let back: i64 = (0..n).map(|k| inv[i][k] * a[k][j]).sum();
            ensure!(prod == i64::from(i == j) && back == i64::from(i == j), "inverse fails at ({i}, {j})");
        }
    }
    Ok(pass(format!(
        "exit 2 for {}; A2 p=5 entry (e,w0) = v^3; {n}x{n} multiplicities unitriangular with integer inverse",
        refused.iter().map(|(t, p)| format!("{t}/p{p}")).collect::<Vec<_>>().join(" ")
    )))
}

fn c10_determinism() -> Result<Verdict> {
    let suite: &[&[&str]] = &[
        &["weyl", "--type", "B2"],
        &["kl", "--type", "G2"],
        &["kl", "--type", "A3", "--element", "s2 s1 s3 s2"],
        &["bschar", "--type", "B2", "--word", "s1 s2 s1 s2"],
        &["coinv", "--type", "A3", "--prime", "7"],
        &["bs", "--type", "B2", "--word", "s1 s2 s1"],
        &["decompose", "--type", "B2", "--prime", "2", "--word", "s2 s1 s2 s1 s2", "--seed", "7"],
        &["decompose", "--type", "A2", "--word", "s1 s2 s1 s2", "--format", "table"],
        &["pcan", "--type", "G2", "--prime", "3", "--element", "s1 s2 s1"],
        &["decmat", "--type", "B2", "--prime", "5"],
        &["decmat", "--type", "A2", "--prime", "3", "--force"],
        &["simples", "--type", "A2", "--prime", "7"],
        &["cellmot", "--flag", "A3", "--bundle", "2", "--closed", "e,s1"],
        &["milnork", "--q", "16", "--n", "2"],
        &["tatehom", "--prime", "3", "--i", "0", "--j", "0"],
        &["decmat", "--type", "A2", "--prime", "2"],
    ];
    for args in suite {
        let a = motkit(args, None)?;
        let b = motkit(args, None)?;
        ensure!(
            a.stdout == b.stdout && a.stderr == b.stderr && a.status.code() == b.status.code(),
            "outputs differ for {args:?}"
        );
    }
    let dir = tempfile::tempdir()?;
    let args = ["decompose", "--type", "B2", "--prime", "3", "--word", "s1 s2 s1 s2"];
    let cold = motkit(&args, Some(dir.path()))?;
    let warm = motkit(&args, Some(dir.path()))?;
    let bare = motkit(&args, None)?;
    ensure!(cold.stdout == warm.stdout && warm.stdout == bare.stdout, "cached and uncached outputs differ");
    Ok(pass(format!("{} invocations byte-identical across two runs; cold, warm and uncached cache runs agree", suite.len())))
}

type Check = fn() -> Result<Verdict>;

fn main() -> ExitCode {
    let criteria: [(&str, Option<u64>, Check); 10] = [
        ("coinvariant dimensions match length counts", Some(30), c1_coinvariant_dims),
        ("Bott-Samelson graded dimensions", Some(10), c2_bott_samelson_dims),
        ("reduced-word independence", Some(300), c3_reduced_word_independence),
        ("p-canonical equals KL at large p", Some(300), c4_kl_agreement),
        ("p-canonical sanity", None, c5_p_canonical_sanity),
        ("locality of D_w", Some(60), c6_locality),
        ("Milnor K and Tate homs", Some(30), c7_milnor),
        ("cellular calculus", Some(5), c8_cellular),
        ("category O gate", Some(60), c9_category_o_gate),
        ("determinism", None, c10_determinism),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let within = limit.is_none_or(|s| elapsed <= Duration::from_secs(s));
        let (ok, detail) = match result {
            Ok(v) => (v.ok && within, v.detail),
            Err(e) => (false, format!("error: {e:#}")),
        };
        let budget = limit.map_or(String::new(), |s| format!(", limit {s} s"));
        let tag = if ok { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {tag}: {name}: {detail} ({:.2} s{budget})", i + 1, elapsed.as_secs_f64());
        failed += usize::from(!ok);
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
