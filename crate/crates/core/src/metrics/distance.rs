use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::power::PowerProduct;
use crate::constructions::{Construction, Family, UnitConditionReport};
use crate::error::{Error, Result};
use crate::lattice::{LatticeDescriptor, LatticeKind};
use crate::real::{Precision, Real};

/// Default limit on `n·(2R+1)^n` for the enumeration oracle.
pub const DEFAULT_WORK_CAP: u128 = 100_000_000;
pub const DEFAULT_ORACLE_RADIUS: u32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceStatus {
    Unavailable,
    LowerBound,
    Exact,
}

impl DistanceStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            DistanceStatus::Exact => "exact",
            DistanceStatus::LowerBound => "lower_bound",
            DistanceStatus::Unavailable => "unavailable",
        }
    }
}

/// A published closed form that disagrees with the recomputed one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Erratum {
    pub published: PowerProduct,
    pub note: String,
}

impl Erratum {
    pub fn to_json(&self) -> Value {
        json!({ "published": self.published.to_json(), "note": self.note })
    }
}

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub value: Real,
    pub radius: u32,
    pub precision: Precision,
    /// Number of nonzero coefficient vectors examined.
    pub evaluations: u128,
    /// A coefficient vector attaining the minimum.
    pub witness: Vec<i64>,
}

impl OracleResult {
    pub fn to_json(&self) -> Value {
        json!({
            "value": self.value.to_decimal(self.precision.digits() as usize),
            "radius": self.radius,
            "precision_digits": self.precision.digits(),
            "evaluations": self.evaluations.to_string(),
            "witness": self.witness,
        })
    }
}

#[derive(Debug, Clone)]
pub struct DistanceReport {
    pub kind: LatticeKind,
    pub family: Family,
    pub dimension: usize,
    /// Exact value, or the proven lower bound when `status` is `LowerBound`.
    pub closed_form: Option<PowerProduct>,
    pub status: DistanceStatus,
    pub hypothesis: Option<UnitConditionReport>,
    pub erratum: Option<Erratum>,
    pub oracle: Option<OracleResult>,
}

impl DistanceReport {
    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind,
            "family": self.family,
            "dimension": self.dimension,
            "status": self.status,
            "closed_form": self.closed_form.as_ref().map(PowerProduct::to_json),
            "hypothesis": self.hypothesis.as_ref().map(|h| json!({
                "u": h.u,
                "u_integral": h.u_integral,
                "one_plus_u_unit": h.one_plus_u_unit,
                "one_minus_u_unit": h.one_minus_u_unit,
                "unit": h.unit_label(),
            })),
            "erratum": self.erratum.as_ref().map(Erratum::to_json),
            "oracle": self.oracle.as_ref().map(OracleResult::to_json),
        })
    }

    /// The oracle never lands below a proven value (within `tol`).
    pub fn oracle_consistent(&self, tol: &Real) -> Option<bool> {
        let (cf, o) = (self.closed_form.as_ref()?, self.oracle.as_ref()?);
        let v = cf.to_real(o.precision);
        Some(&o.value - &v >= -tol.clone())
    }
}

fn odd_forms(n: usize, p: usize) -> PowerProduct {
    PowerProduct::power(p as u64, 1 - n as i64, 2)
}

/// Published `D_n` form for the mixed family.
pub fn mixed_dn_published(l: usize, p: usize, m: u32, k: usize) -> PowerProduct {
    let n = (l * k) as i64;
    PowerProduct::power(2, l as i64 - n * (m as i64 - 3), 2)
        .mul(&PowerProduct::power(p as u64, k as i64 - n, 2))
}

const MIXED_DN_NOTE: &str = "the published value 2^((l-n(m-3))/2) p^((k-n)/2) is not attained: \
x(1±u) lies in the D_n module, so under the unit hypothesis the minimum equals that of Z^n";

/// Closed-form minimum product distance with hypothesis gating.
///
/// `report` is computed from the construction when not supplied.
pub fn closed_form_dpmin(
    d: &LatticeDescriptor,
    report: Option<&UnitConditionReport>,
) -> DistanceReport {
    let hypothesis = match d.construction.odd_part() {
        Some(odd) => Some(report.cloned().unwrap_or_else(|| odd.unit_condition_report())),
        None => None,
    };
    let mut erratum = None;
    let (value, status) = match d.construction.as_ref() {
        Construction::PowerTwo(c) => {
            let e = 1 - ((c.m as i64 - 1) * c.k as i64);
            let v = match d.kind {
                LatticeKind::Zn => PowerProduct::power(2, e, 2),
                LatticeKind::Dn => PowerProduct::power(2, e + 2, 2),
            };
            (v, DistanceStatus::Exact)
        }
        Construction::Odd(c) => {
            let h = hypothesis.as_ref().expect("odd family has a hypothesis");
            let status = gate(d.kind, h, c.n == 3);
            (odd_forms(c.n, c.p), status)
        }
        Construction::Mixed(c) => {
            let h = hypothesis.as_ref().expect("mixed family has a hypothesis");
            let n = c.n as i64;
            let v = PowerProduct::power(c.p as u64, c.k as i64 - n, 2)
                .mul(&PowerProduct::power(2, c.l as i64 - n * (c.m as i64 - 1), 2));
            let status = gate(d.kind, h, false);
            if d.kind == LatticeKind::Dn && status != DistanceStatus::Unavailable {
                erratum = Some(Erratum {
                    published: mixed_dn_published(c.l, c.p, c.m, c.k),
                    note: MIXED_DN_NOTE.into(),
                });
            }
            (v, status)
        }
    };
    DistanceReport {
        kind: d.kind,
        family: d.family,
        dimension: d.dimension,
        closed_form: (status != DistanceStatus::Unavailable).then_some(value),
        status,
        hypothesis,
        erratum,
        oracle: None,
    }
}

fn gate(kind: LatticeKind, h: &UnitConditionReport, cubic: bool) -> DistanceStatus {
    if !h.u_integral {
        return DistanceStatus::Unavailable;
    }
    match kind {
        LatticeKind::Zn => DistanceStatus::Exact,
        LatticeKind::Dn if cubic || h.has_unit() => DistanceStatus::Exact,
        LatticeKind::Dn => DistanceStatus::LowerBound,
    }
}

/// `|N(x)|` against its closed form, for odd and mixed constructions.
pub fn norm_of_x_check(c: &Construction) -> Result<bool> {
    let odd = c
        .odd_part()
        .ok_or_else(|| Error::InvalidParameter("no odd part in a power-of-two construction".into()))?;
    if !odd.unit_condition_report().u_integral {
        return Err(Error::InvalidParameter(
            "the norm identity needs u to be an algebraic integer".into(),
        ));
    }
    match c {
        Construction::Odd(o) => o.norm_of_x_check(),
        Construction::Mixed(m) => m.norm_of_x_check(),
        Construction::PowerTwo(_) => unreachable!(),
    }
}

/// Work estimate `n·(2R+1)^n`, saturating.
pub fn oracle_work(n: usize, radius: u32) -> u128 {
    let side = 2 * radius as u128 + 1;
    let mut w = n as u128;
    for _ in 0..n {
        w = w.saturating_mul(side);
    }
    w
}

/// Brute-force `min |Π_i (yM)_i|` over nonzero integer `y` with `‖y‖_∞ ≤ radius`.
///
/// The outer coordinate is split across threads; each thread walks the
/// remaining coordinates as an odometer, updating `yM` by one row per step.
pub fn oracle_dpmin(d: &LatticeDescriptor, radius: u32, work_cap: u128) -> Result<OracleResult> {
    if radius == 0 {
        return Err(Error::InvalidParameter("oracle radius must be at least 1".into()));
    }
    let n = d.dimension;
    let needed = oracle_work(n, radius);
    if needed > work_cap {
        return Err(Error::WorkCapExceeded { needed, cap: work_cap });
    }
    let m = &d.generator_matrix;
    let bits = d.precision.bits();
    let r = radius as i64;
    let rows: Vec<Vec<Real>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let wrap: Vec<Vec<Real>> = rows
        .iter()
        .map(|row| {
            let s = Real::from_i64(2 * r, bits);
            row.iter().map(|v| &s * v).collect()
        })
        .collect();

    let partial: Vec<(Option<(Real, Vec<i64>)>, u128)> = (-r..=r)
        .into_par_iter()
        .map(|y0| {
            let mut y = vec![-r; n];
            y[0] = y0;
            let mut v: Vec<Real> = (0..n)
                .map(|j| {
                    (0..n).fold(Real::zero(bits), |acc, i| {
                        &acc + &(&Real::from_i64(y[i], bits) * &rows[i][j])
                    })
                })
                .collect();
            let mut best: Option<(Real, Vec<i64>)> = None;
            let mut count = 0u128;
            loop {
                if y.iter().any(|&c| c != 0) {
                    count += 1;
                    let prod = v.iter().skip(1).fold(v[0].clone(), |acc, x| &acc * x).abs();
                    if best.as_ref().is_none_or(|(b, _)| prod < *b) {
                        best = Some((prod, y.clone()));
                    }
                }
                // advance coordinates 1..n; coordinate 0 is fixed per task
                let mut i = n - 1;
                loop {
                    if i == 0 {
                        return (best, count);
                    }
                    if y[i] < r {
                        y[i] += 1;
                        for (vj, rj) in v.iter_mut().zip(&rows[i]) {
                            *vj = &*vj + rj;
                        }
                        break;
                    }
                    y[i] = -r;
                    for (vj, wj) in v.iter_mut().zip(&wrap[i]) {
                        *vj = &*vj - wj;
                    }
                    i -= 1;
                }
            }
        })
        .collect();

    let mut best: Option<(Real, Vec<i64>)> = None;
    let mut evaluations = 0u128;
    for (cand, count) in partial {
        evaluations += count;
        if let Some((v, w)) = cand {
            if best.as_ref().is_none_or(|(b, _)| v < *b) {
                best = Some((v, w));
            }
        }
    }
    let (value, witness) = best.expect("the box holds a nonzero vector");
    Ok(OracleResult {
        value,
        radius,
        precision: d.precision,
        evaluations,
        witness,
    })
}

/// Center density: `2^{-n}` for `Z^n`, `2^{-(n+2)/2}` for `D_n`.
pub fn center_density(kind: LatticeKind, n: usize) -> PowerProduct {
    match kind {
        LatticeKind::Zn => PowerProduct::power(2, -(n as i64), 1),
        LatticeKind::Dn => PowerProduct::power(2, -(n as i64 + 2), 2),
    }
}

/// `λ^n` (minimum norm to the `n`) and volume of the standard lattice.
fn scale_factors(kind: LatticeKind, n: usize) -> (PowerProduct, PowerProduct) {
    match kind {
        LatticeKind::Zn => (PowerProduct::one(), PowerProduct::one()),
        LatticeKind::Dn => (PowerProduct::power(2, n as i64, 2), PowerProduct::power(2, 1, 1)),
    }
}

/// `n`-th roots of `d_rel = d/λ^n` and `d_nor = d/vol`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparative {
    pub d_rel_root: PowerProduct,
    pub d_nor_root: PowerProduct,
}

pub fn comparative_distances(rep: &DistanceReport) -> Result<Comparative> {
    let d = match (&rep.closed_form, rep.status) {
        (Some(v), DistanceStatus::Exact) => v,
        _ => {
            return Err(Error::NotExact {
                status: rep.status.as_str().into(),
            })
        }
    };
    Ok(comparative_from(d, rep.kind, rep.dimension))
}

/// The comparative measures for a given `d_min`.
pub fn comparative_from(d: &PowerProduct, kind: LatticeKind, n: usize) -> Comparative {
    let (lambda_n, vol) = scale_factors(kind, n);
    Comparative {
        d_rel_root: d.div(&lambda_n).root(n),
        d_nor_root: d.div(&vol).root(n),
    }
}

/// Same measures from a numeric `d_min`.
pub fn comparative_numeric(
    d: &Real,
    kind: LatticeKind,
    n: usize,
    p: Precision,
) -> (Real, Real) {
    let bits = p.bits();
    let (lambda_n, vol) = scale_factors(kind, n);
    let root = |x: Real| {
        let inv = Real::from_rational(
            &num_rational::BigRational::new(1.into(), (n as i64).into()),
            bits,
        );
        (&x.ln() * &inv).exp()
    };
    let rel = d / &lambda_n.to_real(p);
    let nor = d / &vol.to_real(p);
    (root(rel), root(nor))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioReport {
    pub family: Family,
    pub n: usize,
    /// `(d_rel(Z^n))^{1/n} / (d_rel(D_n))^{1/n}`
    pub rel_ratio: PowerProduct,
    /// `(d_nor(Z^n))^{1/n} / (d_nor(D_n))^{1/n}`
    pub nor_ratio: PowerProduct,
    /// Published `(rel, nor)` where they differ.
    pub erratum: Option<(PowerProduct, PowerProduct)>,
}

impl RatioReport {
    pub fn to_json(&self) -> Value {
        json!({
            "family": self.family,
            "n": self.n,
            "rel_ratio": self.rel_ratio.to_json(),
            "nor_ratio": self.nor_ratio.to_json(),
            "erratum": self.erratum.as_ref().map(|(r, n)| json!({
                "rel_ratio": r.to_json(),
                "nor_ratio": n.to_json(),
                "note": MIXED_DN_NOTE,
            })),
        })
    }
}

/// Splits `n = l·2^a` into the odd part and the power of two.
fn split_two(n: usize) -> (usize, u32) {
    let a = n.trailing_zeros();
    (n >> a, a)
}

/// Closed-form ratios between `Z^n` and `D_n` for a family.
pub fn ratio_asymptotics(n: usize, family: Family) -> Result<RatioReport> {
    let (l, a) = split_two(n.max(1));
    let valid = match family {
        Family::Odd => n >= 3 && a == 0,
        Family::PowerTwo => n >= 2 && l == 1,
        Family::Mixed => a >= 1 && l >= 3,
    };
    if !valid {
        return Err(Error::InvalidParameter(format!(
            "n = {n} is not a dimension of the {family} family"
        )));
    }
    let nn = n as i64;
    let sqrt2 = PowerProduct::power(2, 1, 2);
    let inv_root = PowerProduct::power(2, 1, nn);
    let (rel_ratio, nor_ratio, erratum) = match family {
        Family::Odd => (sqrt2, inv_root, None),
        Family::PowerTwo => (PowerProduct::power(2, nn - 2, 2 * nn), PowerProduct::one(), None),
        Family::Mixed => (
            sqrt2,
            inv_root,
            Some((PowerProduct::power(2, -1, 2), PowerProduct::power(2, 1 - nn, nn))),
        ),
    };
    Ok(RatioReport {
        family,
        n,
        rel_ratio,
        nor_ratio,
        erratum,
    })
}

/// Whether a status is at least the required level.
pub fn status_at_least(s: DistanceStatus, required: DistanceStatus) -> bool {
    s >= required
}
