use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use super::{bar_complex, bar_complex_module, BarComplex};
use crate::error::{arg_err, Result};
use crate::exactla::DimTable;
use crate::modules::RightModule;
use crate::operads::Operad;
use crate::symseq::LaurentPoly;

/// One arity of a duality report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArityReport {
    pub arity: usize,
    pub source: LaurentPoly,
    pub bar_homology: LaurentPoly,
    pub predicted: LaurentPoly,
    pub complex_dims: DimTable,
    pub euler_complex: i64,
    pub euler_predicted: i64,
    pub pass: bool,
}

impl ArityReport {
    /// The Euler characteristic of the complex equals that of its homology
    /// and that of the prediction.
    pub fn euler_consistent(&self) -> bool {
        self.euler_complex == self.bar_homology.eval_minus_one() && self.euler_complex == self.euler_predicted
    }

    pub fn to_json(&self) -> Value {
        json!({
            "source": self.source.to_string(),
            "bar_homology": self.bar_homology.to_string(),
            "predicted": self.predicted.to_string(),
            "pass": self.pass,
        })
    }
}

#[derive(Clone, Debug)]
pub struct DualityReport {
    pub title: String,
    /// `None` for the rationals, `Some(p)` for `F_p`.
    pub prime: Option<u64>,
    pub arities: BTreeMap<usize, ArityReport>,
}

impl DualityReport {
    pub fn all_pass(&self) -> bool {
        self.arities.values().all(|a| a.pass)
    }

    /// `{"k": {"source", "bar_homology", "predicted", "pass"}}`.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (k, a) in &self.arities {
            m.insert(k.to_string(), a.to_json());
        }
        Value::Object(m)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("arity,source,bar_homology,predicted,pass\n");
        for (k, a) in &self.arities {
            s.push_str(&format!("{k},{},{},{},{}\n", a.source, a.bar_homology, a.predicted, a.pass));
        }
        s
    }

    pub fn to_text(&self) -> String {
        let field = self.prime.map_or("Q".to_string(), |p| format!("F_{p}"));
        let mut s = format!("{} over {field}\n", self.title);
        for (k, a) in &self.arities {
            s.push_str(&format!(
                "  k={k}: source {} | bar homology {} | predicted {} | {}\n",
                a.source,
                a.bar_homology,
                a.predicted,
                if a.pass { "pass" } else { "FAIL" }
            ));
        }
        s
    }
}

/// `q^{shift} P(q^{-1})`.
pub fn koszul_prediction(p: &LaurentPoly, shift: i64) -> LaurentPoly {
    p.reflect().shift(shift)
}

fn homology_poly(t: &DimTable) -> LaurentPoly {
    LaurentPoly::from_terms(t.0.iter().map(|(&d, &n)| (d, n as i64)))
}

fn arity_report(bar: &BarComplex, source: LaurentPoly, shift: i64, prime: Option<u64>) -> Result<ArityReport> {
    let h = match prime {
        None => bar.homology(),
        Some(p) => bar.homology_mod(p)?,
    };
    let bar_homology = homology_poly(&h);
    let predicted = koszul_prediction(&source, shift);
    Ok(ArityReport {
        arity: bar.arity(),
        pass: bar_homology == predicted,
        euler_complex: bar.complex.euler_characteristic(),
        euler_predicted: predicted.eval_minus_one(),
        complex_dims: bar.complex.space_dims(),
        source,
        bar_homology,
        predicted,
    })
}

/// Compares `H(B(O)(k))` with `q^{nk-n} P_{O(k)}(q^{-1})`.
pub fn check_poincare_koszul(op: &dyn Operad, n: i64, arities: &[usize], prime: Option<u64>) -> Result<DualityReport> {
    if let Some(&k) = arities.iter().find(|&&k| k < 2) {
        return Err(arg_err!("operad reports start at arity 2, got {k}"));
    }
    let reports = arities
        .par_iter()
        .map(|&k| {
            let bar = bar_complex(op, k)?;
            arity_report(&bar, op.poincare(k)?, n * k as i64 - n, prime)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DualityReport {
        title: format!("Poincaré–Koszul check for {} with n={n}", op.name()),
        prime,
        arities: reports.into_iter().map(|r| (r.arity, r)).collect(),
    })
}

/// Compares `H(B(R)(k))` with `q^{nk-n+d} P_{T(k)}(q^{-1})` for a comparison
/// module `T`.
pub fn check_module_pk(
    r: &dyn RightModule,
    target: &dyn RightModule,
    (n, d): (i64, i64),
    arities: &[usize],
    prime: Option<u64>,
) -> Result<DualityReport> {
    if arities.contains(&0) {
        return Err(arg_err!("module reports start at arity 1"));
    }
    let reports = arities
        .par_iter()
        .map(|&k| {
            let bar = bar_complex_module(r, k)?;
            arity_report(&bar, target.poincare(k)?, n * k as i64 - n + d, prime)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DualityReport {
        title: format!("module Poincaré–Koszul check: B({}) against {} with shift ({n},{d})", r.name(), target.name()),
        prime,
        arities: reports.into_iter().map(|r| (r.arity, r)).collect(),
    })
}
