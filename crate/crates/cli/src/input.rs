//! JSON input schema: a matroid is given either by a representation
//! (group plus element vectors) or by explicit rank and multiplicity
//! tables keyed by subset bitmasks in decimal-string form.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use arimat_core::abelian_group::FgGroup;
use arimat_core::arith_matroid::{ArithmeticMatroid, GroundSet};
use arimat_core::representation::{from_representation, Representation};

use crate::AppError;

/// An integer that may arrive as a JSON number or a decimal string
/// (strings cover values beyond the double-precision-safe range).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntLike {
    Num(i64),
    Str(String),
}

impl IntLike {
    pub fn to_bigint(&self) -> Result<BigInt, AppError> {
        match self {
            IntLike::Num(n) => Ok((*n).into()),
            IntLike::Str(s) => s
                .parse()
                .map_err(|_| AppError::input(format!("not an integer: {s:?}"))),
        }
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        match i64::try_from(v) {
            Ok(n) => IntLike::Num(n),
            Err(_) => IntLike::Str(v.to_string()),
        }
    }
}

#[derive(Serialize, Deserialize)]
pub struct GroupSpec {
    pub free_rank: usize,
    pub torsion: Vec<IntLike>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MatroidInput {
    Representation {
        group: GroupSpec,
        elements: Vec<Vec<IntLike>>,
        #[serde(skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
    Explicit {
        ground_size: usize,
        rank: BTreeMap<String, usize>,
        multiplicity: BTreeMap<String, IntLike>,
        #[serde(skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
}

/// A parsed input: the matroid, plus the backing representation when
/// one was given.
pub struct Loaded {
    pub matroid: ArithmeticMatroid,
    pub representation: Option<Representation>,
}

fn table_values<T: Clone>(
    name: &str,
    table: &BTreeMap<String, T>,
    n: usize,
) -> Result<Vec<T>, AppError> {
    let mut out = Vec::with_capacity(n);
    for bits in 0..n {
        let key = bits.to_string();
        let v = table.get(&key).ok_or_else(|| {
            AppError::input(format!("{name} table is missing subset key {key:?}"))
        })?;
        out.push(v.clone());
    }
    if table.len() != n {
        return Err(AppError::input(format!(
            "{name} table has {} entries, expected {n}",
            table.len()
        )));
    }
    Ok(out)
}

pub fn load(input: &MatroidInput) -> Result<Loaded, AppError> {
    match input {
        MatroidInput::Representation {
            group,
            elements,
            labels,
        } => {
            let torsion = group
                .torsion
                .iter()
                .map(IntLike::to_bigint)
                .collect::<Result<Vec<_>, _>>()?;
            let g = FgGroup::new(group.free_rank, torsion)
                .map_err(|e| AppError::input(e.to_string()))?;
            let parsed = elements
                .iter()
                .map(|coords| {
                    let coords = coords
                        .iter()
                        .map(IntLike::to_bigint)
                        .collect::<Result<Vec<_>, _>>()?;
                    g.element(coords).map_err(|e| AppError::input(e.to_string()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let mut rep = Representation::new(g, parsed)
                .map_err(|e| AppError::input(e.to_string()))?;
            if let Some(ls) = labels {
                if ls.len() != elements.len() {
                    return Err(AppError::input(format!(
                        "{} labels for {} elements",
                        ls.len(),
                        elements.len()
                    )));
                }
                rep = rep.with_labels(ls.clone());
            }
            Ok(Loaded {
                matroid: from_representation(&rep),
                representation: Some(rep),
            })
        }
        MatroidInput::Explicit {
            ground_size,
            rank,
            multiplicity,
            labels,
        } => {
            let k = *ground_size;
            if k > 31 {
                return Err(AppError::input(format!("ground size {k} exceeds 31")));
            }
            let n = 1usize << k;
            let rank = table_values("rank", rank, n)?;
            let mult = table_values("multiplicity", multiplicity, n)?
                .iter()
                .map(IntLike::to_bigint)
                .collect::<Result<Vec<_>, _>>()?;
            let ground = match labels {
                Some(ls) if ls.len() == k => GroundSet::labeled(ls.clone()),
                Some(ls) => {
                    return Err(AppError::input(format!(
                        "{} labels for ground size {k}",
                        ls.len()
                    )))
                }
                None => GroundSet::unlabeled(k),
            };
            let matroid = ArithmeticMatroid::from_tables(ground, rank, mult)
                .map_err(|e| AppError::input(e.to_string()))?;
            Ok(Loaded {
                matroid,
                representation: None,
            })
        }
    }
}

/// Renders a matroid back into the explicit-table input schema, so a
/// derived matroid (e.g. a dual) can be fed to another invocation.
pub fn to_explicit_input(m: &ArithmeticMatroid) -> MatroidInput {
    let (rank_vec, mult_vec) = m.to_tables();
    let mut rank = BTreeMap::new();
    let mut multiplicity = BTreeMap::new();
    for (bits, (r, v)) in rank_vec.iter().zip(&mult_vec).enumerate() {
        rank.insert(bits.to_string(), *r);
        multiplicity.insert(bits.to_string(), IntLike::from_bigint(v));
    }
    MatroidInput::Explicit {
        ground_size: m.size(),
        rank,
        multiplicity,
        labels: m.ground().labels().map(<[String]>::to_vec),
    }
}

/// Renders a representation into the representation input schema.
pub fn to_representation_input(r: &Representation) -> MatroidInput {
    MatroidInput::Representation {
        group: GroupSpec {
            free_rank: r.group().free_rank(),
            torsion: r.group().torsion().iter().map(IntLike::from_bigint).collect(),
        },
        elements: r
            .elements()
            .iter()
            .map(|e| e.coords().iter().map(IntLike::from_bigint).collect())
            .collect(),
        labels: r.labels().map(<[String]>::to_vec),
    }
}
