use std::collections::HashMap;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{EngineConfig, EngineError, JonesExpr, Summand};
use crate::qarith::{QArithError, RatFun, RootJet};
use crate::qsymbols::{FactoredFrac, JetTable, QMonomial, QSum, TetLabels};

fn expand(expr: &JonesExpr, n: u32, config: &EngineConfig) -> Result<Vec<Summand>, EngineError> {
    if n == 0 {
        return Err(EngineError::DomainError("color must be positive".into()));
    }
    if expr.count_summands(n, config.budget) > config.budget {
        return Err(EngineError::BudgetExceeded { budget: config.budget });
    }
    Ok(expr.summands(n))
}

fn distinct_tets(summands: &[Summand]) -> Vec<[u32; 6]> {
    let mut tets: Vec<[u32; 6]> = summands.iter().flat_map(|s| s.tets.iter().copied()).collect();
    tets.sort_unstable();
    tets.dedup();
    tets
}

fn tet_sum(j: [u32; 6]) -> QSum {
    QSum::tet(&TetLabels::new(j).expect("inadmissible tetrahedra are dropped"))
}

/// Exact unnormalized value `<Γ>_N` as a rational function of `A^{1/2}`.
pub fn eval_generic(expr: &JonesExpr, n: u32, config: &EngineConfig) -> Result<RatFun, EngineError> {
    let summands = expand(expr, n, config)?;
    let tets: HashMap<[u32; 6], FactoredFrac> = distinct_tets(&summands)
        .into_par_iter()
        .map(|j| (j, tet_sum(j).to_factored()))
        .collect();
    let terms: Vec<FactoredFrac> = summands
        .par_iter()
        .map(|s| {
            let rings = s
                .rings
                .iter()
                .fold(s.mono.clone(), |acc, &(c, m)| acc.mul(&QMonomial::ring(c, n).pow(m as i64)));
            s.tets.iter().fold(rings.to_factored(), |acc, j| acc.mul(&tets[j]))
        })
        .collect();
    let total = terms.iter().fold(FactoredFrac::zero(), |acc, t| acc.add(t));
    Ok(total.reduce().to_ratfun())
}

/// Divides an unnormalized value by `<N>^s`.
pub fn normalize_generic(value: &RatFun, n: u32, split_components: u32) -> RatFun {
    let d = QMonomial::unknot(n).pow(split_components as i64).to_ratfun();
    value.checked_div(&d).expect("unknot value is nonzero")
}

/// Numeric normalized value at a generic point `A`.
pub fn eval_at_point(expr: &JonesExpr, n: u32, a: Complex64, config: &EngineConfig) -> Result<Complex64, EngineError> {
    let summands = expand(expr, n, config)?;
    let a_half = a.sqrt();
    let pole = |_: QArithError| EngineError::UnexpectedPole { order: 1 };
    let mono_sum = |q: &QSum| -> Result<Complex64, EngineError> {
        q.terms().iter().map(|t| t.eval_half(a_half).map_err(pole)).sum()
    };
    let tets: HashMap<[u32; 6], Complex64> = distinct_tets(&summands)
        .into_iter()
        .map(|j| Ok((j, mono_sum(&tet_sum(j))?)))
        .collect::<Result<_, EngineError>>()?;
    let mut total = Complex64::new(0.0, 0.0);
    for s in &summands {
        let mut m = s.mono.eval_half(a_half).map_err(pole)?;
        for &(c, k) in &s.rings {
            m *= QMonomial::ring(c, n).eval_half(a_half).map_err(pole)?.powi(k as i32);
        }
        total += s.tets.iter().fold(m, |acc, j| acc * tets[j]);
    }
    let d = QMonomial::unknot(n)
        .pow(expr.split_components as i64)
        .eval_half(a_half)
        .map_err(pole)?;
    Ok(total / d)
}

fn summand_prefactor(s: &Summand, table: &JetTable) -> Result<RootJet, QArithError> {
    let mut jet = s.mono.jet(table)?;
    for &(c, m) in &s.rings {
        jet = jet.mul(&QMonomial::ring(c, s.n).jet(table)?.pow(m));
    }
    Ok(jet)
}

/// Normalized value at `ζ_N` together with how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootValue {
    pub value: Complex64,
    pub precision: usize,
    pub summands: usize,
}

fn root_attempt(summands: &[Summand], n: u32, split: u32, precision: usize) -> Result<Complex64, QArithError> {
    let max = summands
        .iter()
        .map(Summand::max_index)
        .chain(std::iter::once(n))
        .max()
        .unwrap_or(1);
    let table = JetTable::new(n, precision, max);
    let tets: HashMap<[u32; 6], RootJet> = distinct_tets(summands)
        .into_par_iter()
        .map(|j| Ok((j, tet_sum(j).jet(&table)?)))
        .collect::<Result<_, QArithError>>()?;
    let jets: Vec<RootJet> = summands
        .par_iter()
        .map(|s| {
            let m = summand_prefactor(s, &table)?;
            Ok(s.tets.iter().fold(m, |acc, j| acc.mul(&tets[j])))
        })
        .collect::<Result<_, QArithError>>()?;
    let total = RootJet::sum(n, &jets);
    let norm = QMonomial::unknot(n).pow(split as i64).jet(&table)?;
    total.div(&norm)?.value()
}

/// Normalized value `J_N = <Γ>_N / <N>^s` at `A = ζ_N`.
///
/// Jets start at precision 2 and double while the constant term is not
/// determined, up to `config.max_precision`.
pub fn eval_at_root(expr: &JonesExpr, n: u32, config: &EngineConfig) -> Result<RootValue, EngineError> {
    let summands = expand(expr, n, config)?;
    let mut precision = 2;
    loop {
        match root_attempt(&summands, n, expr.split_components, precision) {
            Ok(value) => {
                return Ok(RootValue {
                    value,
                    precision,
                    summands: summands.len(),
                })
            }
            Err(QArithError::PrecisionExhausted) if precision < config.max_precision => {
                precision = (2 * precision).min(config.max_precision);
            }
            Err(QArithError::PrecisionExhausted) => return Err(EngineError::PrecisionExhausted { precision }),
            Err(QArithError::PoleAtPoint) => return Err(EngineError::UnexpectedPole { order: 1 }),
            Err(QArithError::DivisionByZero) => {
                return Err(EngineError::NotReducible("division by an exact zero".into()))
            }
        }
    }
}

/// Jet of every nonzero summand at `ζ_N`, before normalization.
pub fn summand_jets(
    expr: &JonesExpr,
    n: u32,
    precision: usize,
    config: &EngineConfig,
) -> Result<Vec<(Vec<u32>, RootJet)>, EngineError> {
    let summands = expand(expr, n, config)?;
    let max = summands.iter().map(Summand::max_index).max().unwrap_or(1);
    let table = JetTable::new(n, precision, max);
    summands
        .par_iter()
        .map(|s| {
            let m = summand_prefactor(s, &table)?;
            let j = s
                .tets
                .iter()
                .try_fold(m, |acc, t| tet_sum(*t).jet(&table).map(|x| acc.mul(&x)))?;
            Ok((s.assignment.clone(), j))
        })
        .collect::<Result<_, QArithError>>()
        .map_err(|e| EngineError::NotReducible(e.to_string()))
}
