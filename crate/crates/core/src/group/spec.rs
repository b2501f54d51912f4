use serde::{Deserialize, Serialize};

use super::{FiniteMatrixGroup, GroupElement, GroupModel, LieGroupModel, DEFAULT_CLOSURE_CAP};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rng::DEFAULT_SEED;
use crate::scalar::{self, QMatrix, Rational};

/// A JSON matrix entry: a number, or an exact string such as `"-3/4"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonScalar {
    Number(serde_json::Number),
    Text(String),
}

impl JsonScalar {
    /// Exact value when the entry is an integer or an exact string.
    pub fn exact(&self) -> Result<Option<Rational>> {
        match self {
            JsonScalar::Number(n) => Ok(n.as_i64().map(scalar::int)),
            JsonScalar::Text(s) => scalar::parse_rational(s).map(Some),
        }
    }

    pub fn value(&self) -> Result<f64> {
        match self {
            JsonScalar::Number(n) => n.as_f64().ok_or(Error::NotFinite),
            JsonScalar::Text(s) => Ok(scalar::to_f64(&scalar::parse_rational(s)?)),
        }
    }

    pub fn from_rational(q: &Rational) -> Self {
        if q.is_integer() {
            if let Ok(v) = i64::try_from(q.to_integer()) {
                return JsonScalar::Number(v.into());
            }
        }
        JsonScalar::Text(scalar::format_rational(q))
    }

    pub fn from_f64(x: f64) -> Result<Self> {
        serde_json::Number::from_f64(x).map(JsonScalar::Number).ok_or(Error::NotFinite)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Finite,
    Lie,
}

/// Group specification file:
/// `{"dim": n, "kind": "finite"|"lie", "generators"|"algebra_basis": [[row-major entries]]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub dim: usize,
    pub kind: GroupKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<JsonScalar>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra_basis: Option<Vec<Vec<JsonScalar>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

fn float_matrix(dim: usize, entries: &[JsonScalar]) -> Result<Matrix> {
    if entries.len() != dim * dim {
        return Err(Error::DimensionMismatch { expected: dim * dim, actual: entries.len() });
    }
    let values = entries.iter().map(JsonScalar::value).collect::<Result<Vec<f64>>>()?;
    Ok(Matrix::from_row_slice(dim, dim, &values))
}

fn exact_matrix(dim: usize, entries: &[JsonScalar]) -> Result<Option<QMatrix>> {
    let mut out = Vec::with_capacity(entries.len());
    for e in entries {
        match e.exact()? {
            Some(q) => out.push(q),
            None => return Ok(None),
        }
    }
    QMatrix::from_row_major(dim, dim, out).map(Some)
}

impl GroupSpec {
    pub fn build(&self) -> Result<GroupModel> {
        match self.kind {
            GroupKind::Finite => {
                let gens = self.generators.as_ref().ok_or(Error::Parse("finite group needs \"generators\"".into()))?;
                let mut elements = Vec::with_capacity(gens.len());
                for g in gens {
                    let el = match exact_matrix(self.dim, g)? {
                        Some(q) => GroupElement::exact(q),
                        None => GroupElement::float(float_matrix(self.dim, g)?),
                    };
                    elements.push(el);
                }
                Ok(FiniteMatrixGroup::close(self.dim, elements, DEFAULT_CLOSURE_CAP)?.into())
            }
            GroupKind::Lie => {
                let basis =
                    self.algebra_basis.as_ref().ok_or(Error::Parse("lie group needs \"algebra_basis\"".into()))?;
                let mats = basis.iter().map(|b| float_matrix(self.dim, b)).collect::<Result<Vec<_>>>()?;
                Ok(LieGroupModel::new(self.dim, mats, self.seed.unwrap_or(DEFAULT_SEED))?.into())
            }
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_lie(model: &LieGroupModel) -> Result<Self> {
        let basis = model
            .algebra_basis()
            .iter()
            .map(|m| m.transpose().iter().map(|&x| exactish(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            dim: model.dim(),
            kind: GroupKind::Lie,
            generators: None,
            algebra_basis: Some(basis),
            seed: Some(model.seed()),
        })
    }

    pub fn from_finite_generators(dim: usize, generators: &[GroupElement]) -> Result<Self> {
        let gens = generators
            .iter()
            .map(|g| match &g.exact {
                Some(q) => Ok(q.entries().iter().map(JsonScalar::from_rational).collect()),
                None => g.matrix.transpose().iter().map(|&x| JsonScalar::from_f64(x)).collect(),
            })
            .collect::<Result<Vec<Vec<JsonScalar>>>>()?;
        Ok(Self { dim, kind: GroupKind::Finite, generators: Some(gens), algebra_basis: None, seed: None })
    }
}

/// Integers are written as integers, everything else as a float.
fn exactish(x: f64) -> Result<JsonScalar> {
    if x.fract() == 0.0 && x.abs() < 1e15 {
        Ok(JsonScalar::Number((x as i64).into()))
    } else {
        JsonScalar::from_f64(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_exact_and_lie_specs() {
        let d4 = GroupSpec::from_json(r#"{"dim": 2, "kind": "finite", "generators": [[0, -1, 1, 0], [1, 0, 0, -1]]}"#)
            .unwrap();
        let g = d4.build().unwrap();
        assert_eq!(g.as_finite().unwrap().order(), 8);
        assert!(g.as_finite().unwrap().is_exact());

        let so2 = GroupSpec::from_json(r#"{"dim": 2, "kind": "lie", "algebra_basis": [[0, -1, 1, 0]]}"#).unwrap();
        assert_eq!(so2.build().unwrap().algebra_dim(), 1);
    }

    #[test]
    fn exact_strings_and_round_trip() {
        let text = r#"{"dim": 2, "kind": "finite", "generators": [["3/5", "-4/5", "4/5", "3/5"]]}"#;
        let spec = GroupSpec::from_json(text).unwrap();
        // A rotation by an irrational multiple of pi has infinite order.
        let err = super::super::FiniteMatrixGroup::close(
            2,
            vec![GroupElement::exact(exact_matrix(2, &spec.generators.unwrap()[0]).unwrap().unwrap())],
            50,
        );
        assert!(matches!(err, Err(Error::ClosureCap { cap: 50 })));

        let d2 = GroupSpec::from_json(r#"{"dim": 2, "kind": "finite", "generators": [[-1, 0, 0, -1]]}"#).unwrap();
        let g = d2.build().unwrap();
        let back = GroupSpec::from_finite_generators(2, g.as_finite().unwrap().generators()).unwrap();
        assert_eq!(back, d2);
    }

    #[test]
    fn malformed_specs_are_input_errors() {
        assert!(GroupSpec::from_json("{\"dim\": 2}").is_err());
        let s = GroupSpec::from_json(r#"{"dim": 2, "kind": "finite"}"#).unwrap();
        assert!(matches!(s.build(), Err(Error::Parse(_))));
    }
}
