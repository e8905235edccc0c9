use serde::{Deserialize, Serialize};

use super::{PuiseuxSeries, Variable};
use crate::coefficients::{check_order, CycNum, Rat};
use crate::error::{Error, Result};

/// A coefficient on the wire: a plain rational string, or the coordinate
/// strings in the power basis of the series' cyclotomic field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffJson {
    Rational(Rat),
    Cyclotomic(Vec<Rat>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Rat,
    pub coeff: CoeffJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub ramification: u32,
    pub cyc_order: u32,
    #[serde(default, skip_serializing_if = "is_q")]
    pub variable: Variable,
    pub trunc_order: Rat,
    pub terms: Vec<TermJson>,
}

fn is_q(v: &Variable) -> bool {
    *v == Variable::Q
}

impl From<&PuiseuxSeries> for SeriesJson {
    fn from(s: &PuiseuxSeries) -> Self {
        let terms = s
            .terms()
            .map(|(exp, c)| TermJson {
                exp,
                coeff: match c.is_rational() {
                    Some(r) => CoeffJson::Rational(r),
                    None => CoeffJson::Cyclotomic(c.coords().to_vec()),
                },
            })
            .collect();
        SeriesJson {
            ramification: s.ramification(),
            cyc_order: s.cyc_order(),
            variable: s.variable(),
            trunc_order: s.trunc_order().clone(),
            terms,
        }
    }
}

impl TryFrom<SeriesJson> for PuiseuxSeries {
    type Error = Error;

    fn try_from(j: SeriesJson) -> Result<Self> {
        check_order(j.cyc_order)?;
        if j.ramification == 0 {
            return Err(Error::Parse("ramification must be >= 1".into()));
        }
        let order = j.cyc_order;
        let terms = j
            .terms
            .into_iter()
            .map(|t| {
                let c = match t.coeff {
                    CoeffJson::Rational(r) => CycNum::from_rat(order, r),
                    CoeffJson::Cyclotomic(v) => CycNum::from_coords(order, v)?,
                };
                Ok((t.exp, c))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(
            PuiseuxSeries::from_terms(j.ramification, order, j.trunc_order, terms)?
                .with_variable(j.variable),
        )
    }
}

impl PuiseuxSeries {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&SeriesJson::from(self)).expect("series serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: SeriesJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        j.try_into()
    }

    /// `exponent,coefficient` rows; cyclotomic coefficients are written as
    /// `;`-separated coordinates.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("exponent,coefficient\n");
        for (e, c) in self.terms() {
            let coeff = match c.is_rational() {
                Some(r) => r.to_string(),
                None => c
                    .coords()
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(";"),
            };
            out.push_str(&format!("{e},{coeff}\n"));
        }
        out
    }
}
