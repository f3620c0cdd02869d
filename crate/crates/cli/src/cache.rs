//! On-disk cache of indecomposable Soergel modules: one versioned JSON file
//! per `(type, rank, prime, element)`, written atomically.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use motkit_core::smod::{Fingerprint, GradedModule, IndecompRecord, SoergelCatalog};
use motkit_core::{CartanType, FpMat, LaurentPoly, WeylGroup};
use serde::{Deserialize, Serialize};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixRecord {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub schema: u32,
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub rank: usize,
    pub prime: u32,
    /// Canonical word, e.g. `"s1 s2 s1"`, or `"e"`.
    pub word: String,
    /// Dimensions of the slots in degrees `0, 2, 4, ...`.
    pub dims: Vec<usize>,
    /// `action[j][k]`: generator `j` from slot `k` to slot `k + 1`.
    pub action: Vec<Vec<MatrixRecord>>,
    pub fingerprint: Fingerprint,
    pub certified: bool,
    /// `μ_x(v)` of the other summands of the Bott–Samelson module of `word`.
    #[serde(default)]
    pub multiplicities: Option<Vec<(String, LaurentPoly)>>,
}

impl CacheRecord {
    pub fn from_record(t: CartanType, r: &IndecompRecord, mults: Option<&BTreeMap<usize, LaurentPoly>>, group: &WeylGroup) -> Self {
        let m = &r.module;
        let action = m
            .action()
            .iter()
            .map(|fam| fam.iter().map(|a| MatrixRecord { rows: a.rows(), cols: a.cols(), data: a.data().to_vec() }).collect())
            .collect();
        CacheRecord {
            schema: SCHEMA,
            cartan_type: t.letter.to_string(),
            rank: t.rank,
            prime: r.prime,
            word: r.label.to_string(),
            dims: m.slot_dims().to_vec(),
            action,
            fingerprint: r.fingerprint.clone(),
            certified: r.certified,
            multiplicities: mults.map(|m| m.iter().map(|(&x, mu)| (group.element(x).to_string(), mu.clone())).collect()),
        }
    }

    /// Rebuild the record over the catalog's algebra, revalidating the
    /// module structure and the fingerprint.
    pub fn to_record(&self, catalog: &SoergelCatalog) -> Result<(IndecompRecord, Option<BTreeMap<usize, LaurentPoly>>)> {
        let alg = catalog.algebra();
        let t = alg.datum.cartan_type;
        if self.schema != SCHEMA {
            bail!("schema {} (expected {SCHEMA})", self.schema);
        }
        if self.cartan_type != t.letter.to_string() || self.rank != t.rank || self.prime != alg.prime() {
            bail!("record is for {}{} at p = {}", self.cartan_type, self.rank, self.prime);
        }
        let word = motkit_core::coxeter::parse_word(&self.word)?;
        let group = catalog.group();
        let label = group.element(group.index_of_word(&word)?).clone();
        if label.to_string() != self.word {
            bail!("word {:?} is not canonical", self.word);
        }
        let action = self
            .action
            .iter()
            .map(|fam| {
                fam.iter()
                    .map(|m| {
                        if m.data.len() != m.rows * m.cols || m.data.iter().any(|&x| x >= alg.prime()) {
                            bail!("malformed matrix");
                        }
                        Ok(FpMat::from_rows(m.rows, m.cols, m.data.clone()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let module = GradedModule::new(Arc::clone(alg), 0, self.dims.clone(), action)?;
        if module.slot_dims().first() != Some(&1) {
            bail!("bottom degree is not one-dimensional");
        }
        let fingerprint = Fingerprint::of(&module)?;
        if fingerprint != self.fingerprint {
            bail!("fingerprint does not match the module");
        }
        let mults = match &self.multiplicities {
            None => None,
            Some(list) => Some(
                list.iter()
                    .map(|(word, mu)| Ok((group.index_of_word(&motkit_core::coxeter::parse_word(word)?)?, mu.clone())))
                    .collect::<Result<BTreeMap<_, _>>>()?,
            ),
        };
        Ok((IndecompRecord { label, module, fingerprint, prime: self.prime, certified: self.certified }, mults))
    }
}

pub fn file_name(t: CartanType, prime: u32, word: &str) -> String {
    format!("{}{}-p{}-{}.json", t.letter, t.rank, prime, word.replace(' ', "_"))
}

/// Write `record` to `dir` through a temporary file and a rename.
pub fn write_record(dir: &Path, record: &CacheRecord) -> Result<PathBuf> {
    fs::create_dir_all(dir).with_context(|| format!("creating cache directory {}", dir.display()))?;
    let t = CartanType::parse(&format!("{}{}", record.cartan_type, record.rank))?;
    let path = dir.join(file_name(t, record.prime, &record.word));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    serde_json::to_writer(&mut tmp, record)?;
    tmp.write_all(b"\n")?;
    tmp.as_file().sync_all()?;
    tmp.persist(&path).map_err(|e| e.error)?;
    Ok(path)
}

pub fn read_record(path: &Path) -> Result<CacheRecord> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

/// Preload every usable cached record; unusable entries are reported and
/// skipped, so they get recomputed and rewritten.
pub fn load(dir: &Path, catalog: &mut SoergelCatalog) -> Vec<String> {
    let mut warnings = Vec::new();
    let t = catalog.algebra().datum.cartan_type;
    let prime = catalog.prime();
    let group = Arc::clone(catalog.group());
    for w in group.elements() {
        let path = dir.join(file_name(t, prime, &w.to_string()));
        if !path.exists() {
            continue;
        }
        let loaded = read_record(&path).and_then(|r| r.to_record(catalog)).and_then(|(r, m)| Ok(catalog.preload(r, m)?));
        if let Err(e) = loaded {
            warnings.push(format!("ignoring cache entry {}: {e:#}", path.display()));
        }
    }
    warnings
}

/// Write the records the catalog computed in this run.
pub fn store(dir: &Path, catalog: &SoergelCatalog) -> Result<()> {
    let t = catalog.algebra().datum.cartan_type;
    for &w in catalog.fresh() {
        let rec = catalog.record(w).expect("fresh records are present");
        let mults = catalog.known_multiplicities(w);
        write_record(dir, &CacheRecord::from_record(t, rec, mults, catalog.group()))?;
    }
    Ok(())
}
