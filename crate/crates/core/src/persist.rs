//! JSON persistence. Every document carries a `kind` tag and a format
//! `version`; complex numbers are `[re, im]` pairs.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::designs::VectorFamily;
use crate::error::{Error, Result};
use crate::gf::{Field, FieldSpec};
use crate::linalg::{ComplexMatrix, StateVector, C64};
use crate::mub::{Basis, MubSet};
use crate::sic::SicCandidate;
use crate::wigner::WignerTable;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq)]
pub enum Artifact {
    MubSet(MubSet),
    BasisFamily(VectorFamily),
    Sic(SicCandidate),
    WignerTable(WignerTable),
    Field(Field),
}

impl Artifact {
    pub fn kind(&self) -> &'static str {
        match self {
            Artifact::MubSet(_) => "mubset",
            Artifact::BasisFamily(_) => "basisfamily",
            Artifact::Sic(_) => "sic",
            Artifact::WignerTable(_) => "wignertable",
            Artifact::Field(_) => "field",
        }
    }
}

type Vector = Vec<C64>;

#[derive(Serialize, Deserialize)]
struct MubSetDoc {
    labels: Vec<String>,
    bases: Vec<Vec<Vector>>,
}

#[derive(Serialize, Deserialize)]
struct FamilyDoc {
    n: usize,
    vectors: Vec<Vector>,
}

#[derive(Serialize, Deserialize)]
struct SicDoc {
    n: usize,
    fiducial: Vector,
    fsic: f64,
    seed: Option<u64>,
    restart: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct FieldDoc {
    p: u64,
    k: u32,
    polynomial: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct Envelope {
    kind: String,
    version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    meta: Option<Value>,
    data: Value,
}

fn components(v: &StateVector) -> Vector {
    v.components().to_vec()
}

pub fn to_json(artifact: &Artifact) -> Result<String> {
    to_json_with_meta(artifact, None)
}

/// Like [`to_json`] with a free-form `meta` block (generator parameters).
pub fn to_json_with_meta(artifact: &Artifact, meta: Option<Value>) -> Result<String> {
    let data = match artifact {
        Artifact::MubSet(m) => serde_json::to_value(MubSetDoc {
            labels: m.labels.clone(),
            bases: m.bases.iter().map(|b| b.vectors().iter().map(components).collect()).collect(),
        })?,
        Artifact::BasisFamily(f) => serde_json::to_value(FamilyDoc {
            n: f.dim(),
            vectors: f.vectors().iter().map(components).collect(),
        })?,
        Artifact::Sic(c) => serde_json::to_value(SicDoc {
            n: c.n,
            fiducial: components(&c.fiducial),
            fsic: c.fsic,
            seed: c.seed,
            restart: c.restart,
        })?,
        Artifact::WignerTable(w) => serde_json::to_value(w)?,
        Artifact::Field(f) => serde_json::to_value(FieldDoc {
            p: f.characteristic(),
            k: f.degree(),
            polynomial: f.polynomial().to_vec(),
        })?,
    };
    let env = Envelope { kind: artifact.kind().to_string(), version: FORMAT_VERSION, meta, data };
    Ok(serde_json::to_string_pretty(&env)?)
}

/// A parsed document plus any warnings raised while reading it.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub artifact: Artifact,
    pub meta: Option<Value>,
    pub warnings: Vec<String>,
}

/// Parses a document. A version other than [`FORMAT_VERSION`] produces a
/// warning and a best-effort load.
pub fn from_json(text: &str) -> Result<Loaded> {
    let env: Envelope = serde_json::from_str(text)?;
    let mut warnings = Vec::new();
    if env.version != FORMAT_VERSION {
        warnings.push(format!("format version {} differs from {FORMAT_VERSION}; loading anyway", env.version));
    }
    let artifact = match env.kind.as_str() {
        "mubset" => {
            let doc: MubSetDoc = serde_json::from_value(env.data)?;
            let bases = doc
                .bases
                .into_iter()
                .map(|b| Basis::new(b.into_iter().map(StateVector::new).collect()))
                .collect();
            Artifact::MubSet(MubSet { bases, labels: doc.labels })
        }
        "basisfamily" => {
            let doc: FamilyDoc = serde_json::from_value(env.data)?;
            let fam = VectorFamily::new(doc.vectors.into_iter().map(StateVector::new).collect())?;
            if fam.dim() != doc.n {
                return Err(Error::InvalidDimension { dim: fam.dim(), reason: format!("document says {}", doc.n) });
            }
            Artifact::BasisFamily(fam)
        }
        "sic" => {
            let doc: SicDoc = serde_json::from_value(env.data)?;
            let cand = SicCandidate {
                n: doc.n,
                fiducial: StateVector::new(doc.fiducial),
                fsic: doc.fsic,
                seed: doc.seed,
                restart: doc.restart,
            };
            cand.validate()?;
            Artifact::Sic(cand)
        }
        "wignertable" => Artifact::WignerTable(serde_json::from_value(env.data)?),
        "field" => {
            let doc: FieldDoc = serde_json::from_value(env.data)?;
            let field = if doc.k == 1 { FieldSpec::new(doc.p, 1)? } else { FieldSpec::with_polynomial(doc.p, doc.polynomial)? };
            if field.degree() != doc.k {
                return Err(Error::InvalidArgument(format!("degree {} does not match polynomial", doc.k)));
            }
            Artifact::Field(field)
        }
        other => return Err(Error::InvalidArgument(format!("unknown kind `{other}`"))),
    };
    Ok(Loaded { artifact, meta: env.meta, warnings })
}

pub fn save(artifact: &Artifact, path: impl AsRef<Path>) -> Result<()> {
    save_with_meta(artifact, None, path)
}

pub fn save_with_meta(artifact: &Artifact, meta: Option<Value>, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, to_json_with_meta(artifact, meta)? + "\n")?;
    Ok(())
}

/// Reads a bare complex matrix (row-major arrays of `[re, im]`) or a bare
/// vector (array of `[re, im]`), returning a vector as its projector
/// when `as_projector` is set and as a one-column matrix otherwise.
pub fn read_complex_matrix(path: impl AsRef<Path>, as_projector: bool) -> Result<ComplexMatrix> {
    let value: Value = serde_json::from_str(&fs::read_to_string(path)?)?;
    if let Ok(rows) = serde_json::from_value::<Vec<Vec<C64>>>(value.clone()) {
        let n = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument("matrix rows must be nonempty and equal length".into()));
        }
        return Ok(ComplexMatrix::from_rows(&rows));
    }
    let v: Vector = serde_json::from_value(value)?;
    if v.is_empty() {
        return Err(Error::InvalidArgument("empty vector".into()));
    }
    let v = StateVector::new(v);
    Ok(if as_projector { ComplexMatrix::projector(&v.normalized()) } else { ComplexMatrix::from_columns(&[v]) })
}

pub fn load(path: impl AsRef<Path>) -> Result<Loaded> {
    from_json(&fs::read_to_string(path)?)
}

fn wrong_kind(expected: &str, got: &Artifact) -> Error {
    Error::WrongKind { expected: expected.into(), actual: got.kind().into() }
}

/// Loads a document that must be of kind `mubset`.
pub fn load_mubset(path: impl AsRef<Path>) -> Result<(MubSet, Vec<String>)> {
    let l = load(path)?;
    match l.artifact {
        Artifact::MubSet(m) => Ok((m, l.warnings)),
        other => Err(wrong_kind("mubset", &other)),
    }
}

/// Loads a `basisfamily` document, or the vectors of a `mubset` or `sic`
/// orbit as a family.
pub fn load_family(path: impl AsRef<Path>) -> Result<(VectorFamily, Vec<String>)> {
    let l = load(path)?;
    let fam = match l.artifact {
        Artifact::BasisFamily(f) => f,
        Artifact::MubSet(m) => VectorFamily::from_mubs(&m)?,
        Artifact::Sic(c) => VectorFamily::new(crate::sic::orbit(&c.fiducial))?,
        other => return Err(wrong_kind("basisfamily", &other)),
    };
    Ok((fam, l.warnings))
}

pub fn load_sic(path: impl AsRef<Path>) -> Result<(SicCandidate, Vec<String>)> {
    let l = load(path)?;
    match l.artifact {
        Artifact::Sic(c) => Ok((c, l.warnings)),
        other => Err(wrong_kind("sic", &other)),
    }
}

pub fn load_wigner(path: impl AsRef<Path>) -> Result<(WignerTable, Vec<String>)> {
    let l = load(path)?;
    match l.artifact {
        Artifact::WignerTable(w) => Ok((w, l.warnings)),
        other => Err(wrong_kind("wignertable", &other)),
    }
}

pub fn load_field(path: impl AsRef<Path>) -> Result<(Field, Vec<String>)> {
    let l = load(path)?;
    match l.artifact {
        Artifact::Field(f) => Ok((f, l.warnings)),
        other => Err(wrong_kind("field", &other)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mub::ivanovic_mubs;
    use crate::sic::dim4_fiducial;
    use crate::wigner::{phase_point_set, wigner_function};

    fn round_trip(a: &Artifact) -> Artifact {
        let text = to_json(a).unwrap();
        let back = from_json(&text).unwrap();
        assert!(back.warnings.is_empty());
        assert_eq!(to_json(&back.artifact).unwrap(), text);
        back.artifact
    }

    #[test]
    fn mubset_round_trip_is_exact() {
        let m = Artifact::MubSet(ivanovic_mubs(5).unwrap());
        assert_eq!(round_trip(&m), m);
    }

    #[test]
    fn other_kinds_round_trip() {
        let sic = Artifact::Sic(SicCandidate::new(dim4_fiducial()).unwrap());
        assert_eq!(round_trip(&sic), sic);
        let fam = Artifact::BasisFamily(VectorFamily::from_mubs(&ivanovic_mubs(3).unwrap()).unwrap());
        assert_eq!(round_trip(&fam), fam);
        let pps = phase_point_set(3).unwrap();
        let w = wigner_function(&ComplexMatrix::identity(3).scale_real(1.0 / 3.0), &pps).unwrap();
        let wt = Artifact::WignerTable(w);
        assert_eq!(round_trip(&wt), wt);
        for (p, k) in [(2, 3), (3, 2), (7, 1)] {
            let f = Artifact::Field(FieldSpec::new(p, k).unwrap());
            assert_eq!(round_trip(&f), f);
        }
    }

    #[test]
    fn complex_numbers_are_pairs() {
        let text = to_json(&Artifact::Sic(SicCandidate::new(StateVector::basis(2, 0)).unwrap())).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["kind"], "sic");
        assert_eq!(v["version"], FORMAT_VERSION);
        assert_eq!(v["data"]["fiducial"][0], serde_json::json!([1.0, 0.0]));
    }

    #[test]
    fn wrong_kind_and_version() {
        let dir = std::env::temp_dir().join(format!("finite-hilbert-persist-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("field.json");
        save(&Artifact::Field(FieldSpec::new(2, 3).unwrap()), &path).unwrap();
        match load_mubset(&path) {
            Err(Error::WrongKind { expected, actual }) => assert_eq!((expected.as_str(), actual.as_str()), ("mubset", "field")),
            other => panic!("{other:?}"),
        }
        let text = fs::read_to_string(&path).unwrap().replace("\"version\": 1", "\"version\": 7");
        let loaded = from_json(&text).unwrap();
        assert_eq!(loaded.warnings.len(), 1);
        assert!(matches!(loaded.artifact, Artifact::Field(_)));
        assert!(matches!(load(dir.join("missing.json")), Err(Error::Io(_))));
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn meta_and_bare_matrices() {
        let dir = std::env::temp_dir().join(format!("finite-hilbert-meta-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("fam.json");
        let fam = Artifact::BasisFamily(VectorFamily::new(vec![StateVector::basis(2, 1)]).unwrap());
        save_with_meta(&fam, Some(serde_json::json!({"latin": [[0]]})), &path).unwrap();
        let back = load(&path).unwrap();
        assert_eq!(back.meta.unwrap()["latin"], serde_json::json!([[0]]));
        let m = dir.join("m.json");
        fs::write(&m, "[[[1,0],[0,0]],[[0,0],[1,0]]]").unwrap();
        assert_eq!(read_complex_matrix(&m, true).unwrap(), ComplexMatrix::identity(2));
        fs::write(&m, "[[0,0],[2,0]]").unwrap();
        let p = read_complex_matrix(&m, true).unwrap();
        assert!((p.get(1, 1).re - 1.0).abs() < 1e-15);
        fs::write(&m, "[[[1,0]],[[0,0],[0,1]]]").unwrap();
        assert!(read_complex_matrix(&m, true).is_err());
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn tampered_sic_is_rejected() {
        let text = to_json(&Artifact::Sic(SicCandidate::new(dim4_fiducial()).unwrap())).unwrap();
        let mut v: Value = serde_json::from_str(&text).unwrap();
        v["data"]["fsic"] = serde_json::json!(0.5);
        assert!(from_json(&v.to_string()).is_err());
    }
}
