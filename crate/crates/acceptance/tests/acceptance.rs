//! Acceptance criteria 1-9. Prints one PASS/FAIL line per criterion (with
//! supporting detail for failures) and exits nonzero if any criterion fails.

use std::sync::Arc;
use std::time::{Duration, Instant};

use cyclo_lattice::constructions::{
    Construction, MixedConstruction, OddConstruction, PowerTwoConstruction,
};
use cyclo_lattice::lattice::{
    build_lattice, diversity_proxy, gram_and_verify, LatticeDescriptor, LatticeKind,
    DIVERSITY_SAMPLES, DIVERSITY_SEED, DIVERSITY_THRESHOLD,
};
use cyclo_lattice::metrics::{
    closed_form_dpmin, oracle_dpmin, DistanceStatus, PowerProduct, DEFAULT_WORK_CAP,
};
use cyclo_lattice::{CyclotomicElement, Precision, Real};
use cyclo_lattice_acceptance as reference;
use serde_json::Value;

// Pinned tolerances.
const PRECISION_DIGITS: u32 = 50;
const EXAMPLE1_TOL: f64 = 1e-3;
const ORTHONORMAL_TOL: f64 = 1e-40;
const ORACLE_TOL: f64 = 1e-12;
const TABLE_MIN_PLACES: usize = 4;
const PINNED_DIVERSITY_THRESHOLD: f64 = 1e-8;
const PINNED_DIVERSITY_SAMPLES: usize = 1000;
const PINNED_DIVERSITY_SEED: u64 = 0x5eed;
const CRITERION1_BUDGET: Duration = Duration::from_secs(60);
const CRITERION4_BUDGET: Duration = Duration::from_secs(600);
const CRITERION7_BUDGET: Duration = Duration::from_secs(900);

const TABLE1_DIMENSIONS: [usize; 6] = [3, 5, 7, 9, 11, 15];

struct Outcome {
    pass: bool,
    summary: String,
    details: Vec<String>,
}

impl Outcome {
    fn new(pass: bool, summary: impl Into<String>, details: Vec<String>) -> Self {
        Outcome {
            pass,
            summary: summary.into(),
            details,
        }
    }
}

fn prec() -> Precision {
    Precision::new(PRECISION_DIGITS).unwrap()
}

fn real(v: f64) -> Real {
    Real::from_f64(v, prec().bits())
}

fn lattice(c: &Arc<Construction>, kind: LatticeKind) -> LatticeDescriptor {
    build_lattice(c.clone(), kind, prec()).unwrap()
}

fn odd(n: usize, p: Option<usize>) -> Arc<Construction> {
    Arc::new(Construction::Odd(OddConstruction::build(n, p).unwrap()))
}

fn two(m: u32) -> Arc<Construction> {
    Arc::new(Construction::PowerTwo(PowerTwoConstruction::build(m).unwrap()))
}

fn mixed(l: usize, m: u32) -> Arc<Construction> {
    Arc::new(Construction::Mixed(MixedConstruction::build(l, m, None).unwrap()))
}

fn pp(base: u64, num: i64, den: i64) -> PowerProduct {
    PowerProduct::power(base, num, den)
}

fn criterion1() -> Outcome {
    let start = Instant::now();
    let mut details = Vec::new();
    let mut pass = true;
    for n in TABLE1_DIMENSIONS {
        let c = OddConstruction::build(n, None).unwrap();
        let alpha = c.alpha_identities().unwrap();
        let traces = c.verify_trace_identities();
        let p = c.p;
        let d = lattice(&Arc::new(Construction::Odd(c)), LatticeKind::Zn);
        let g = gram_and_verify(&d).unwrap();
        let ok = alpha.all() && traces && g.exact_orthonormal == Some(true);
        pass &= ok;
        if !ok {
            details.push(format!(
                "n={n} p={p}: σ(α) {} σ(ζ^λα) {} (ζ^λα)^2 {} traces {} certificate {:?}",
                alpha.sigma_alpha, alpha.sigma_twisted_alpha, alpha.twisted_alpha_square, traces,
                g.exact_orthonormal
            ));
        }
    }
    let elapsed = start.elapsed();
    if elapsed > CRITERION1_BUDGET {
        pass = false;
        details.push(format!("runtime {elapsed:.1?} exceeds {CRITERION1_BUDGET:?}"));
    }
    Outcome::new(
        pass,
        format!("α identities, trace identities and exact Gram certificate for n in {TABLE1_DIMENSIONS:?} ({elapsed:.1?})"),
        details,
    )
}

fn criterion2() -> Outcome {
    let c = OddConstruction::build(7, None).unwrap();
    let (p, r, lambda) = (c.p, c.r, c.lambda);
    let cons = Arc::new(Construction::Odd(c));
    let scale = real(29.0);
    let mut details = Vec::new();
    let mut worst = 0f64;
    for (kind, printed) in [
        (LatticeKind::Zn, reference::EXAMPLE1_ZN_ROW),
        (LatticeKind::Dn, reference::EXAMPLE1_DN_ROW),
    ] {
        let d = lattice(&cons, kind);
        for (j, want) in printed.iter().enumerate() {
            let got = (d.generator_matrix.get(0, j) * &scale).to_f64();
            let err = (got - want).abs();
            worst = worst.max(err);
            if err >= EXAMPLE1_TOL {
                details.push(format!("{} entry (0,{j}): 29·g = {got:.6}, printed {want}", kind.as_str()));
            }
        }
    }
    if (p, r, lambda) != (29, 2, 1) {
        details.push(format!("p={p} r={r} λ={lambda}, expected 29, 2, 1"));
    }
    Outcome::new(
        details.is_empty(),
        format!("p={p} r={r} λ={lambda}; first rows of Z^7, D_7 within {EXAMPLE1_TOL} (worst {worst:.2e})"),
        details,
    )
}

fn criterion3() -> Outcome {
    let c = OddConstruction::build(7, None).unwrap();
    let mut coeffs = vec![0i64; 29];
    for (e, v) in reference::EXAMPLE2_U {
        coeffs[e as usize] = v;
    }
    let printed_u = CyclotomicElement::from_int_coeffs(29, &coeffs);
    let h = c.unit_condition_report();
    let one = CyclotomicElement::one(29);
    let checks = [
        ("u matches printed coefficients", h.u == printed_u),
        ("u integral", h.u.is_algebraic_integer()),
        ("1-u unit", (&one - &h.u).is_unit().unwrap()),
        ("1+u not a unit", !(&one + &h.u).is_unit().unwrap()),
        ("report flags agree", h.u_integral && h.one_minus_u_unit && !h.one_plus_u_unit),
        (
            "|N_K(x)| = 29^4",
            c.norm_k(&c.x).unwrap().to_string().trim_start_matches('-') == "707281",
        ),
    ];
    let z = closed_form_dpmin(&lattice(&Arc::new(Construction::Odd(c)), LatticeKind::Zn), Some(&h));
    let dz_ok = z.status == DistanceStatus::Exact && z.closed_form == Some(pp(29, -3, 1));
    let mut details: Vec<String> = checks
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(name, _)| format!("failed: {name}"))
        .collect();
    if !dz_ok {
        details.push(format!("d(Z^7) = {:?} ({:?})", z.closed_form.map(|v| v.to_string()), z.status));
    }
    Outcome::new(
        details.is_empty(),
        "u, integrality, unit flags, d(Z^7) = 29^-3, |N_K(x)| = 29^4",
        details,
    )
}

fn criterion4() -> Outcome {
    let start = Instant::now();
    let mut details = Vec::new();
    for p in reference::REMARK_NON_INTEGRAL {
        let h = OddConstruction::build(13, Some(p)).unwrap().unit_condition_report();
        if h.u_integral {
            details.push(format!("p={p}: u is integral, expected not"));
        }
    }
    for p in reference::REMARK_NO_UNIT {
        let h = OddConstruction::build(13, Some(p)).unwrap().unit_condition_report();
        if !h.u_integral || h.has_unit() {
            details.push(format!(
                "p={p}: integral {} 1+u unit {} 1-u unit {}",
                h.u_integral, h.one_plus_u_unit, h.one_minus_u_unit
            ));
        }
    }
    let d = closed_form_dpmin(&lattice(&odd(13, Some(53)), LatticeKind::Dn), None);
    if d.status != DistanceStatus::LowerBound || d.closed_form != Some(pp(53, -6, 1)) {
        details.push(format!(
            "D_13 at p=53: {} {:?}",
            d.status.as_str(),
            d.closed_form.map(|v| v.to_string())
        ));
    }
    let elapsed = start.elapsed();
    if elapsed > CRITERION4_BUDGET {
        details.push(format!("runtime {elapsed:.1?} exceeds {CRITERION4_BUDGET:?}"));
    }
    Outcome::new(
        details.is_empty(),
        format!(
            "n=13: u not integral at {:?}; no unit at {:?}; D_13 lower_bound 53^-6 ({elapsed:.1?}, p=313 included)",
            reference::REMARK_NON_INTEGRAL,
            reference::REMARK_NO_UNIT
        ),
        details,
    )
}

fn criterion5() -> Outcome {
    let mut details = Vec::new();
    let cases = [
        (3, LatticeKind::Zn, 1.0 / (2.0 * 2f64.sqrt()), pp(2, -3, 2)),
        (3, LatticeKind::Dn, 1.0 / 2f64.sqrt(), pp(2, -1, 2)),
        (4, LatticeKind::Zn, 2f64.powf(-5.5), pp(2, -11, 2)),
        (4, LatticeKind::Dn, 2f64.powf(-4.5), pp(2, -9, 2)),
    ];
    let mut worst = real(0.0);
    for (m, kind, float, exact) in cases {
        let d = lattice(&two(m), kind);
        let rep = closed_form_dpmin(&d, None);
        let v = rep.closed_form.clone().unwrap();
        let rel = ((v.to_real(prec()).to_f64() - float) / float).abs();
        if rep.status != DistanceStatus::Exact || v != exact || rel > 1e-14 {
            details.push(format!("m={m} {}: {v} ({})", kind.as_str(), rep.status.as_str()));
        }
        let g = gram_and_verify(&d).unwrap();
        if g.max_deviation >= real(ORTHONORMAL_TOL) || !g.det_ok {
            details.push(format!(
                "m={m} {}: Gram deviation {}",
                kind.as_str(),
                g.max_deviation.to_decimal(4)
            ));
        }
        if g.max_deviation > worst {
            worst = g.max_deviation.clone();
        }
    }
    Outcome::new(
        details.is_empty(),
        format!(
            "d(Z^2)=2^-3/2, d(D_2)=2^-1/2, d(Z^4)=2^-11/2, d(D_4)=2^-9/2; Gram deviation {:.2e} < {ORTHONORMAL_TOL:e}",
            worst.to_f64()
        ),
        details,
    )
}

fn criterion6() -> Outcome {
    let c = mixed(7, 3);
    let zd = lattice(&c, LatticeKind::Zn);
    let dd = lattice(&c, LatticeKind::Dn);
    let z = closed_form_dpmin(&zd, None);
    let d = closed_form_dpmin(&dd, None);
    let want_z = pp(2, -21, 2).mul(&pp(29, -6, 1));
    let want_d = pp(2, 7, 2).mul(&pp(29, -6, 1));
    let mut details = Vec::new();
    let z_ok = z.status == DistanceStatus::Exact && z.closed_form.as_ref() == Some(&want_z);
    let d_ok = d.status == DistanceStatus::Exact && d.closed_form.as_ref() == Some(&want_d);
    let unit_ok = d.hypothesis.as_ref().is_some_and(|h| h.u_integral && h.one_minus_u_unit);
    if !z_ok {
        details.push(format!("d(Z^14) = {:?}", z.closed_form.as_ref().map(|v| v.to_string())));
    }
    if !d_ok {
        details.push(format!(
            "d(D_14): expected {want_d} = {}, computed {} = {} ({})",
            want_d.significant(6),
            d.closed_form.as_ref().map_or("-".into(), |v| v.to_string()),
            d.closed_form.as_ref().map_or("-".into(), |v| v.significant(6)),
            d.status.as_str()
        ));
        // D_14 basis row 1 is x - σ(x); its coordinate product undercuts the expected minimum
        let Construction::Mixed(mc) = c.as_ref() else { unreachable!() };
        let is_difference =
            dd.module_generators[1] == &mc.ideal_generators[0] - &mc.ideal_generators[1];
        let prod = dd
            .generator_matrix
            .row(1)
            .iter()
            .fold(real(1.0), |acc, v| &acc * v)
            .abs();
        details.push(format!(
            "evidence: the D_14 vector x - σ(x) (basis row 1: {is_difference}) has |Π coordinates| = {}, \
             below {want_d} = {}; it equals 2^(-21/2)·29^-6 = {}",
            prod.to_decimal(12),
            want_d.significant(6),
            want_z.significant(12)
        ));
    }
    if !unit_ok {
        details.push("status is not justified by a 1-u unit flag".into());
    }
    Outcome::new(
        z_ok && d_ok && unit_ok,
        format!(
            "l=7 m=3: d(Z^14)=2^(-21/2)·29^-6 {}, d(D_14)=2^(7/2)·29^-6 {}, exact via 1-u unit {}",
            ok_word(z_ok),
            ok_word(d_ok),
            ok_word(unit_ok)
        ),
        details,
    )
}

fn ok_word(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "MISMATCH"
    }
}

fn table_json(which: u8) -> Value {
    let (code, out) = cyclo_lattice::cli::run(["cyclolat", "table", "--which", &which.to_string()]);
    assert_eq!(code, 0, "table {which} failed: {out}");
    serde_json::from_str(&out).unwrap()
}

fn criterion7() -> Outcome {
    let start = Instant::now();
    let mut details = Vec::new();
    let mut total = 0;
    let mut agreed = 0;
    let mut allowed = 0;
    let printed: [(u8, &[reference::PrintedRow]); 3] = [
        (1, &reference::TABLE1),
        (2, &reference::TABLE2),
        (3, &reference::TABLE3),
    ];
    for (which, rows) in printed {
        let t = table_json(which);
        let columns: Vec<&str> = t["columns"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
        let out_rows = t["rows"].as_array().unwrap();
        if out_rows.len() != rows.len() {
            details.push(format!("table {which}: {} rows, printed {}", out_rows.len(), rows.len()));
        }
        if which == 1 {
            for (l, p, r, unit) in reference::TABLE1_PARAMS {
                let row = out_rows.iter().find(|x| x["n"] == l);
                let ok = row.is_some_and(|x| x["p"] == p && x["r"] == r && x["unit"] == unit);
                if !ok {
                    details.push(format!("table 1 l={l}: parameters or unit column differ"));
                }
            }
            let diag = t["diagnostics"].as_array().unwrap();
            if !diag.iter().any(|d| d.as_str().unwrap().contains("n = 13")) {
                details.push("table 1: no diagnostic for l = 13".into());
            }
        }
        for pr in rows {
            let Some(row) = out_rows.iter().find(|x| x["n"] == pr.key) else {
                details.push(format!("table {which}: row {} missing", pr.key));
                continue;
            };
            for (col, cell) in columns.iter().zip(pr.cells) {
                total += 1;
                let c = &row["cells"][*col];
                let value = c["value"].as_str().unwrap();
                if reference::cell_agrees(value, cell, TABLE_MIN_PLACES) {
                    agreed += 1;
                    continue;
                }
                // the one discrepancy the printed table is known to carry
                if which == 1 && pr.key == 9 && col.starts_with("delta") {
                    let want = if *col == "delta_zn" { 2f64.powi(-9) } else { 2f64.powf(-5.5) };
                    let got: f64 = value.parse().unwrap();
                    if !c["flag"].is_null() && ((got - want) / want).abs() < 1e-11 {
                        allowed += 1;
                        continue;
                    }
                }
                let flag = &c["flag"];
                details.push(format!(
                    "table {which} n={} {col}: printed {cell}, recomputed {} ({}){}",
                    pr.key,
                    c["rendered"].as_str().unwrap(),
                    c["exact"].as_str().unwrap(),
                    if flag.is_null() {
                        String::new()
                    } else {
                        format!(
                            "; cause: {}; printed convention gives {} (reproduces printed cell: {})",
                            flag["note"].as_str().unwrap(),
                            flag["published_convention"]["value"].as_str().unwrap_or("-"),
                            flag["convention_agrees"]
                        )
                    }
                ));
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed > CRITERION7_BUDGET {
        details.push(format!("runtime {elapsed:.1?} exceeds {CRITERION7_BUDGET:?}"));
    }
    Outcome::new(
        details.is_empty(),
        format!(
            "{agreed}/{total} printed cells reproduced to >= {TABLE_MIN_PLACES} decimals, \
             {allowed} flagged table-1 l=9 δ cells, {} other mismatches ({elapsed:.1?})",
            total - agreed - allowed
        ),
        details,
    )
}

fn criterion8() -> Outcome {
    let cases: Vec<(&str, Arc<Construction>, u32)> = vec![
        ("p=7", odd(3, None), 4),
        ("p=11", odd(5, None), 3),
        ("m=3", two(3), 5),
        ("m=4", two(4), 2),
    ];
    let mut details = Vec::new();
    let mut worst = real(0.0);
    for (label, c, radius) in cases {
        for kind in [LatticeKind::Zn, LatticeKind::Dn] {
            let d = lattice(&c, kind);
            let cf = closed_form_dpmin(&d, None).closed_form.unwrap();
            let o = oracle_dpmin(&d, radius, DEFAULT_WORK_CAP).unwrap();
            let diff = (&o.value - &cf.to_real(prec())).abs();
            if diff >= real(ORACLE_TOL) {
                details.push(format!(
                    "{label} {} r={radius}: oracle {} vs {cf}",
                    kind.as_str(),
                    o.value.to_decimal(15)
                ));
            }
            if diff > worst {
                worst = diff;
            }
        }
    }
    Outcome::new(
        details.is_empty(),
        format!(
            "oracle = closed form for Z/D at p=7 r4, p=11 r3, m=3 r5, m=4 r2 (worst {:.2e} < {ORACLE_TOL:e})",
            worst.to_f64()
        ),
        details,
    )
}

fn criterion9() -> Outcome {
    let mut constructions: Vec<(String, Arc<Construction>)> = TABLE1_DIMENSIONS
        .iter()
        .map(|&n| (format!("odd n={n}"), odd(n, None)))
        .collect();
    for m in 3..=5 {
        constructions.push((format!("power_two m={m}"), two(m)));
    }
    for (l, m) in [(3, 3), (5, 3), (3, 4), (7, 3)] {
        constructions.push((format!("mixed l={l} m={m}"), mixed(l, m)));
    }
    let mut details = Vec::new();
    let mut count = 0;
    let mut smallest = real(f64::MAX);
    for (label, c) in &constructions {
        for kind in [LatticeKind::Zn, LatticeKind::Dn] {
            let d = lattice(c, kind);
            let r = diversity_proxy(&d, PINNED_DIVERSITY_SAMPLES, PINNED_DIVERSITY_SEED);
            count += 1;
            let above = r.min_abs_coordinate > real(PINNED_DIVERSITY_THRESHOLD);
            if !r.passed || !above {
                details.push(format!(
                    "{label} {}: min |coordinate| {}",
                    kind.as_str(),
                    r.min_abs_coordinate.to_decimal(4)
                ));
            }
            if r.min_abs_coordinate < smallest {
                smallest = r.min_abs_coordinate.clone();
            }
        }
    }
    Outcome::new(
        details.is_empty(),
        format!(
            "{count} lattices, {PINNED_DIVERSITY_SAMPLES} vectors each: min |coordinate| {} > {PINNED_DIVERSITY_THRESHOLD:e}",
            smallest.to_decimal(4)
        ),
        details,
    )
}

fn main() {
    // the library must use the pinned constants
    assert_eq!(DIVERSITY_SAMPLES, PINNED_DIVERSITY_SAMPLES);
    assert_eq!(DIVERSITY_SEED, PINNED_DIVERSITY_SEED);
    assert_eq!(DIVERSITY_THRESHOLD, PINNED_DIVERSITY_THRESHOLD);
    assert_eq!(Precision::default().digits(), PRECISION_DIGITS);

    let criteria: [(u32, &str, fn() -> Outcome); 9] = [
        (1, "exact structural identities", criterion1),
        (2, "n=7 generator matrices", criterion2),
        (3, "n=7 unit and norm data", criterion3),
        (4, "n=13 remark primes", criterion4),
        (5, "power-of-two examples", criterion5),
        (6, "mixed l=7, m=3 example", criterion6),
        (7, "tables 1-3", criterion7),
        (8, "oracle agreement", criterion8),
        (9, "diversity proxy", criterion9),
    ];
    let mut failed = Vec::new();
    for (id, name, f) in criteria {
        let o = f();
        println!(
            "criterion {id} [{name}]: {} - {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.summary
        );
        for d in &o.details {
            println!("    {d}");
        }
        if !o.pass {
            failed.push(id);
        }
    }
    println!("acceptance: {}/9 criteria passed", 9 - failed.len());
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
