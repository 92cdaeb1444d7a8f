//! Instance files: the self-describing input format for a crossed-product
//! computation.
//!
//! A file carries the field, the structure-constant tables of A and H, the
//! weak-action and cocycle tables, an optional basis for K (default: the
//! span of A's unit), and an optional list of Ȟ-subcoalgebra components.
//! Vectors are arrays of `[index, "coefficient"]` records with exact
//! rationals written as "p/q"; omitted entries are zero. Capabilities
//! (f invertible, f ⊆ K, separability) are always computed, never declared.

use crate::algebra::{AlgebraData, SubalgebraData, ValidationReport};
use crate::crossed::{self, CocycleData, CrossedData, WeakActionData};
use crate::exactlin::{FieldSpec, Matrix, Vector};
use crate::hopf::HopfData;
use serde::{Deserialize, Serialize};

pub type VecJson = Vec<(usize, String)>;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MulEntry {
    pub left: usize,
    pub right: usize,
    pub value: VecJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub labels: Vec<String>,
    pub unit: VecJson,
    pub mul: Vec<MulEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComulEntry {
    pub h: usize,
    pub terms: Vec<(usize, usize, String)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HopfJson {
    pub labels: Vec<String>,
    pub unit: VecJson,
    pub mul: Vec<MulEntry>,
    pub counit: VecJson,
    pub comul: Vec<ComulEntry>,
    pub antipode: Vec<MulValueEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MulValueEntry {
    pub h: usize,
    pub value: VecJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ActionEntry {
    pub h: usize,
    pub a: usize,
    pub value: VecJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CocycleEntry {
    pub h: usize,
    pub l: usize,
    pub value: VecJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceFile {
    pub id: String,
    pub field: FieldSpec,
    pub algebra: AlgebraJson,
    pub hopf: HopfJson,
    pub action: Vec<ActionEntry>,
    pub cocycle: Vec<CocycleEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_basis: Option<Vec<VecJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<Vec<VecJson>>>,
}

/// A structurally validated instance, ready for the mathematical checks in
/// `crossed::build`.
#[derive(Debug)]
pub struct Instance {
    pub id: String,
    pub field: FieldSpec,
    pub a: AlgebraData,
    pub h: HopfData,
    pub action: WeakActionData,
    pub cocycle: CocycleData,
    pub k: SubalgebraData,
    /// Components of Ȟ, given as spans of H-vectors (projected later).
    pub components: Option<Vec<Vec<Vector>>>,
}

fn parse_vec(field: FieldSpec, dim: usize, v: &VecJson, what: &str) -> Result<Vector, String> {
    let mut out = Vector::zero(dim);
    for (i, c) in v {
        if *i >= dim {
            return Err(format!("{what}: index {i} out of range (dimension {dim})"));
        }
        let s = field.parse(c).map_err(|e| format!("{what}: {e}"))?;
        out.add_to(*i, s);
    }
    Ok(out)
}

pub fn parse_str(text: &str) -> Result<InstanceFile, String> {
    serde_json::from_str(text).map_err(|e| format!("malformed instance file: {e}"))
}

pub fn parse_file(path: &std::path::Path) -> Result<InstanceFile, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_str(&text)
}

/// Structural validation: every index in range, every vector of the right
/// dimension. Mathematical validation happens in `crossed::build`.
pub fn realize(file: &InstanceFile) -> Result<Instance, String> {
    let field = file.field;
    if let FieldSpec::Fp(p) = field {
        if p < 2 || (2..p).any(|d| p % d == 0) {
            return Err(format!("field: {p} is not prime"));
        }
    }
    let a_dim = file.algebra.labels.len();
    if a_dim == 0 {
        return Err("algebra: empty basis".into());
    }
    let mut a_mul = vec![vec![Vector::zero(a_dim); a_dim]; a_dim];
    for e in &file.algebra.mul {
        if e.left >= a_dim || e.right >= a_dim {
            return Err(format!(
                "algebra.mul: basis pair ({}, {}) out of range (dimension {a_dim})",
                e.left, e.right
            ));
        }
        a_mul[e.left][e.right] =
            parse_vec(field, a_dim, &e.value, &format!("algebra.mul[{},{}]", e.left, e.right))?;
    }
    let a_unit = parse_vec(field, a_dim, &file.algebra.unit, "algebra.unit")?;
    let a = AlgebraData::new(field, file.algebra.labels.clone(), a_mul, a_unit);

    let h_dim = file.hopf.labels.len();
    if h_dim == 0 {
        return Err("hopf: empty basis".into());
    }
    let mut h_mul = vec![vec![Vector::zero(h_dim); h_dim]; h_dim];
    for e in &file.hopf.mul {
        if e.left >= h_dim || e.right >= h_dim {
            return Err(format!(
                "hopf.mul: basis pair ({}, {}) out of range (dimension {h_dim})",
                e.left, e.right
            ));
        }
        h_mul[e.left][e.right] =
            parse_vec(field, h_dim, &e.value, &format!("hopf.mul[{},{}]", e.left, e.right))?;
    }
    let h_unit = parse_vec(field, h_dim, &file.hopf.unit, "hopf.unit")?;
    let h_alg = AlgebraData::new(field, file.hopf.labels.clone(), h_mul, h_unit);
    let counit = parse_vec(field, h_dim, &file.hopf.counit, "hopf.counit")?;
    let mut comul = vec![Vec::new(); h_dim];
    for e in &file.hopf.comul {
        if e.h >= h_dim {
            return Err(format!("hopf.comul: basis index {} out of range", e.h));
        }
        let mut terms = Vec::new();
        for (i, j, c) in &e.terms {
            if *i >= h_dim || *j >= h_dim {
                return Err(format!("hopf.comul[{}]: term index out of range", e.h));
            }
            terms.push((
                *i,
                *j,
                field.parse(c).map_err(|er| format!("hopf.comul[{}]: {er}", e.h))?,
            ));
        }
        comul[e.h] = terms;
    }
    let mut antipode = Matrix::zero(h_dim, h_dim);
    for e in &file.hopf.antipode {
        if e.h >= h_dim {
            return Err(format!("hopf.antipode: basis index {} out of range", e.h));
        }
        antipode.set_col(e.h, parse_vec(field, h_dim, &e.value, "hopf.antipode")?);
    }
    let h = HopfData::new(h_alg, comul, counit, antipode);

    let mut action_table = vec![vec![Vector::zero(a_dim); a_dim]; h_dim];
    for e in &file.action {
        if e.h >= h_dim || e.a >= a_dim {
            return Err(format!("action: pair ({}, {}) out of range", e.h, e.a));
        }
        action_table[e.h][e.a] =
            parse_vec(field, a_dim, &e.value, &format!("action[{},{}]", e.h, e.a))?;
    }
    let action = WeakActionData { table: action_table };

    let mut cocycle_table = vec![vec![Vector::zero(a_dim); h_dim]; h_dim];
    for e in &file.cocycle {
        if e.h >= h_dim || e.l >= h_dim {
            return Err(format!("cocycle: pair ({}, {}) out of range", e.h, e.l));
        }
        cocycle_table[e.h][e.l] =
            parse_vec(field, a_dim, &e.value, &format!("cocycle[{},{}]", e.h, e.l))?;
    }
    let cocycle = CocycleData { table: cocycle_table };

    let k = match &file.k_basis {
        None => SubalgebraData::unit_only(&a),
        Some(vs) => {
            let vecs = vs
                .iter()
                .enumerate()
                .map(|(i, v)| parse_vec(field, a_dim, v, &format!("k_basis[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            SubalgebraData::new(&a, vecs)
        }
    };

    let components = match &file.components {
        None => None,
        Some(cs) => {
            let mut out = Vec::new();
            for (ci, c) in cs.iter().enumerate() {
                let vecs = c
                    .iter()
                    .map(|v| parse_vec(field, h_dim, v, &format!("components[{ci}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                out.push(vecs);
            }
            Some(out)
        }
    };

    Ok(Instance { id: file.id.clone(), field, a, h, action, cocycle, k, components })
}

impl Instance {
    pub fn build(self) -> Result<(CrossedData, Option<Vec<Vec<Vector>>>), ValidationReport> {
        let comps = self.components;
        let cd = crossed::build(self.a, self.h, self.action, self.cocycle, self.k)?;
        Ok((cd, comps))
    }
}

/// Path of a bundled fixture (used by tests and the book).
pub fn fixture_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"))
}

/// Loads and builds a bundled fixture.
pub fn load_fixture(name: &str) -> (CrossedData, Option<Vec<Vec<Vector>>>) {
    let file = parse_file(&fixture_path(name)).expect("fixture parses");
    let inst = realize(&file).expect("fixture is structurally valid");
    inst.build().expect("fixture is mathematically valid")
}

/// Names of all bundled fixtures, smallest first.
pub const BUNDLED: [&str; 7] = [
    "trivial_hopf",
    "z2_group",
    "qq_swap",
    "z2_smash",
    "z2_smash_f5",
    "z2z2_twisted",
    "dual_cocycle",
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_fixtures_parse_and_build() {
        for name in BUNDLED {
            let file = parse_file(&fixture_path(name)).unwrap();
            assert_eq!(file.id, name);
            let inst = realize(&file).unwrap();
            let (cd, _) = inst
                .build()
                .unwrap_or_else(|e| panic!("fixture {name} failed to build: {:?}", e.violations));
            assert!(cd.e_dim() >= 1);
        }
    }

    #[test]
    fn z2_smash_shape() {
        let (cd, comps) = load_fixture("z2_smash");
        assert_eq!(cd.a.dim, 2);
        assert_eq!(cd.h.dim(), 2);
        assert_eq!(cd.e_dim(), 4);
        assert!(cd.f_in_k);
        assert_eq!(comps.map(|c| c.len()), Some(2));
    }

    #[test]
    fn out_of_range_index_is_rejected_with_location() {
        let text = r#"{
            "id": "bad", "field": "Q",
            "algebra": {"labels": ["1"], "unit": [[0, "1"]],
                        "mul": [{"left": 0, "right": 1, "value": [[0, "1"]]}]},
            "hopf": {"labels": ["1"], "unit": [[0, "1"]],
                     "mul": [{"left": 0, "right": 0, "value": [[0, "1"]]}],
                     "counit": [[0, "1"]],
                     "comul": [{"h": 0, "terms": [[0, 0, "1"]]}],
                     "antipode": [{"h": 0, "value": [[0, "1"]]}]},
            "action": [], "cocycle": []
        }"#;
        let file = parse_str(text).unwrap();
        let err = realize(&file).unwrap_err();
        assert!(err.contains("algebra.mul"), "got: {err}");
    }

    #[test]
    fn malformed_json_reports_position() {
        let err = parse_str("{ not json").unwrap_err();
        assert!(err.contains("malformed"));
    }

    #[test]
    fn twisted_cocycle_values() {
        let (cd, _) = load_fixture("z2z2_twisted");
        assert_eq!(cd.e_dim(), 4);
        // γ(g)γ(h) = −γ(h)γ(g)
        let g = Vector::unit(4, 1, FieldSpec::Q);
        let hh = Vector::unit(4, 2, FieldSpec::Q);
        let gh = cd.multiply(&cd.gamma(&g), &cd.gamma(&hh));
        let hg = cd.multiply(&cd.gamma(&hh), &cd.gamma(&g));
        assert_eq!(gh, hg.neg());
        assert!(cd.f_inverse.is_some());
        assert!(cd.f_in_k);
    }

    #[test]
    fn qq_swap_has_nontrivial_k() {
        let (cd, _) = load_fixture("qq_swap");
        assert_eq!(cd.k.dim(), 2);
        assert_eq!(cd.e_dim(), 4);
    }
}
