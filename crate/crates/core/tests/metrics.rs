use std::sync::Arc;

use cyclo_lattice::constructions::{
    Construction, Family, MixedConstruction, OddConstruction, PowerTwoConstruction,
};
use cyclo_lattice::lattice::{build_lattice, LatticeDescriptor, LatticeKind};
use cyclo_lattice::metrics::{
    agrees_with_published, center_density, closed_form_dpmin, comparative_distances,
    comparative_numeric, norm_of_x_check, oracle_dpmin, ratio_asymptotics, table,
    DistanceStatus, PowerProduct, DEFAULT_WORK_CAP,
};
use cyclo_lattice::{Error, Precision, Real};

fn prec() -> Precision {
    Precision::default()
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

fn lattice(c: &Arc<Construction>, kind: LatticeKind) -> LatticeDescriptor {
    build_lattice(c.clone(), kind, prec()).unwrap()
}

fn pp(base: u64, num: i64, den: i64) -> PowerProduct {
    PowerProduct::power(base, num, den)
}

#[test]
fn closed_forms_and_gating() {
    let c = odd(7, None);
    for kind in [LatticeKind::Zn, LatticeKind::Dn] {
        let r = closed_form_dpmin(&lattice(&c, kind), None);
        assert_eq!(r.status, DistanceStatus::Exact);
        assert_eq!(r.closed_form, Some(pp(29, -3, 1)));
    }
    let r = closed_form_dpmin(&lattice(&two(4), LatticeKind::Dn), None);
    assert_eq!((r.status, r.closed_form), (DistanceStatus::Exact, Some(pp(2, -9, 2))));

    let c = odd(13, Some(53));
    let h = c.odd_part().unwrap().unit_condition_report();
    assert!(h.u_integral && !h.has_unit());
    let z = closed_form_dpmin(&lattice(&c, LatticeKind::Zn), Some(&h));
    let d = closed_form_dpmin(&lattice(&c, LatticeKind::Dn), Some(&h));
    assert_eq!(z.status, DistanceStatus::Exact);
    assert_eq!(d.status, DistanceStatus::LowerBound);
    assert_eq!(d.closed_form, Some(pp(53, -6, 1)));
    assert!(matches!(comparative_distances(&d), Err(Error::NotExact { .. })));

    let c = odd(13, Some(131));
    let d = closed_form_dpmin(&lattice(&c, LatticeKind::Dn), None);
    assert_eq!((d.status, d.closed_form), (DistanceStatus::Unavailable, None));
}

#[test]
fn cubic_dn_exact_whenever_u_integral() {
    let mut integral = Vec::new();
    for p in [7, 13, 19, 31, 37, 43] {
        let c = odd(3, Some(p));
        let r = closed_form_dpmin(&lattice(&c, LatticeKind::Dn), None);
        let h = r.hypothesis.as_ref().unwrap();
        if h.u_integral {
            integral.push(p);
            assert_eq!(r.status, DistanceStatus::Exact, "p = {p}");
            assert_eq!(r.closed_form, Some(pp(p as u64, -1, 1)));
        } else {
            assert_eq!(r.status, DistanceStatus::Unavailable, "p = {p}");
        }
    }
    eprintln!("u integral for n = 3 at p in {integral:?}");
    assert!(integral.contains(&7));
}

#[test]
fn mixed_dn_carries_published_form_as_erratum() {
    let c = mixed(7, 3);
    let z = closed_form_dpmin(&lattice(&c, LatticeKind::Zn), None);
    let d = closed_form_dpmin(&lattice(&c, LatticeKind::Dn), None);
    let expected = pp(2, -21, 2).mul(&pp(29, -6, 1));
    assert_eq!(z.closed_form.as_ref(), Some(&expected));
    assert_eq!(d.closed_form.as_ref(), Some(&expected));
    assert_eq!(d.status, DistanceStatus::Exact);
    assert!(d.hypothesis.as_ref().unwrap().one_minus_u_unit);
    let e = d.erratum.unwrap();
    assert_eq!(e.published, pp(2, 7, 2).mul(&pp(29, -6, 1)));
}

#[test]
fn mixed_dn_attains_the_zn_value() {
    // x(1 - u) = x - σ(x) is a D_n vector whose product is the Z^n minimum
    let c = mixed(3, 3);
    let d = lattice(&c, LatticeKind::Dn);
    let o = oracle_dpmin(&d, 1, DEFAULT_WORK_CAP).unwrap();
    let z = closed_form_dpmin(&lattice(&c, LatticeKind::Zn), None).closed_form.unwrap();
    let diff = (&o.value - &z.to_real(prec())).abs();
    assert!(diff < Real::from_f64(1e-12, prec().bits()), "oracle {}", o.value);
}

#[test]
fn norm_of_x() {
    assert!(norm_of_x_check(&odd(7, None)).unwrap());
    assert!(norm_of_x_check(&odd(3, Some(7))).unwrap());
    assert!(norm_of_x_check(&mixed(7, 3)).unwrap());
    assert!(norm_of_x_check(&odd(13, Some(131))).is_err());
    assert!(norm_of_x_check(&two(3)).is_err());
    // n = 3, p = 7: |σ^0(x)σ^1(x)σ^2(x)| = 7^2 by direct product
    let c = OddConstruction::build(3, Some(7)).unwrap();
    let prod = &(c.conjugate(0) * c.conjugate(1)) * c.conjugate(2);
    let q = prod.as_rational().unwrap();
    assert_eq!(q.numer().magnitude(), &49u32.into());
}

fn oracle_case(c: &Arc<Construction>, kind: LatticeKind, radius: u32) {
    let d = lattice(c, kind);
    let rep = closed_form_dpmin(&d, None);
    let cf = rep.closed_form.clone().unwrap().to_real(prec());
    let o = oracle_dpmin(&d, radius, DEFAULT_WORK_CAP).unwrap();
    let tol = Real::from_f64(1e-12, prec().bits());
    assert!((&o.value - &cf).abs() < tol, "{:?} {:?}: oracle {} closed {}", d.family, kind, o.value, cf);
    let mut with_oracle = rep;
    with_oracle.oracle = Some(o);
    assert_eq!(with_oracle.oracle_consistent(&tol), Some(true));
}

#[test]
fn oracle_matches_closed_forms() {
    let z3 = odd(3, None);
    oracle_case(&z3, LatticeKind::Zn, 4);
    oracle_case(&z3, LatticeKind::Dn, 4);
    let z5 = odd(5, None);
    oracle_case(&z5, LatticeKind::Zn, 3);
    oracle_case(&z5, LatticeKind::Dn, 3);
    let m3 = two(3);
    oracle_case(&m3, LatticeKind::Zn, 5);
    oracle_case(&m3, LatticeKind::Dn, 5);
    let m4 = two(4);
    oracle_case(&m4, LatticeKind::Zn, 2);
    oracle_case(&m4, LatticeKind::Dn, 2);
}

#[test]
fn oracle_is_deterministic_and_capped() {
    let d = lattice(&odd(3, None), LatticeKind::Dn);
    let a = oracle_dpmin(&d, 3, DEFAULT_WORK_CAP).unwrap();
    let b = oracle_dpmin(&d, 3, DEFAULT_WORK_CAP).unwrap();
    assert_eq!(a.value, b.value);
    assert_eq!(a.witness, b.witness);
    assert_eq!(a.evaluations, 7u128.pow(3) - 1);
    assert!(matches!(
        oracle_dpmin(&d, 4, 100),
        Err(Error::WorkCapExceeded { needed: 2187, cap: 100 })
    ));
    assert!(oracle_dpmin(&d, 0, DEFAULT_WORK_CAP).is_err());
}

#[test]
fn comparative_measures_two_ways() {
    let tol = Real::from_f64(1e-10, prec().bits());
    for (c, radius) in [(odd(3, None), 3), (two(3), 4), (two(4), 2)] {
        for kind in [LatticeKind::Zn, LatticeKind::Dn] {
            let d = lattice(&c, kind);
            let rep = closed_form_dpmin(&d, None);
            let exact = comparative_distances(&rep).unwrap();
            let o = oracle_dpmin(&d, radius, DEFAULT_WORK_CAP).unwrap();
            let (rel, nor) = comparative_numeric(&o.value, kind, d.dimension, prec());
            assert!((&rel - &exact.d_rel_root.to_real(prec())).abs() < tol);
            assert!((&nor - &exact.d_nor_root.to_real(prec())).abs() < tol);
        }
    }
}

#[test]
fn comparative_examples() {
    let c = odd(3, None);
    let r = comparative_distances(&closed_form_dpmin(&lattice(&c, LatticeKind::Zn), None)).unwrap();
    assert_eq!(r.d_rel_root.truncated(4), "0.5227");
    let c = two(4);
    let z = comparative_distances(&closed_form_dpmin(&lattice(&c, LatticeKind::Zn), None)).unwrap();
    let d = comparative_distances(&closed_form_dpmin(&lattice(&c, LatticeKind::Dn), None)).unwrap();
    assert_eq!(z.d_nor_root, d.d_nor_root);
    assert_eq!(d.d_nor_root.truncated(4), "0.3855");
}

#[test]
fn exponent_form_matches_floating_point() {
    // independent f64 evaluation of the exact forms
    let cases: Vec<(PowerProduct, f64)> = vec![
        (pp(29, -3, 7), 29f64.powf(-3.0 / 7.0)),
        (pp(2, -21, 2).mul(&pp(29, -6, 1)), 2f64.powf(-10.5) * 29f64.powi(-6)),
        (pp(7, -2, 6).mul(&pp(2, -9, 12)), 7f64.powf(-1.0 / 3.0) * 2f64.powf(-0.75)),
        (pp(19, -4, 9), 19f64.powf(-4.0 / 9.0)),
    ];
    for (p, f) in cases {
        let v = p.to_real(prec()).to_f64();
        assert!(((v - f) / f).abs() < 1e-14, "{p}: {v} vs {f}");
        let sig: f64 = p.significant(12).parse().unwrap();
        assert!(((sig - f) / f).abs() < 1e-11);
    }
}

#[test]
fn center_densities() {
    assert_eq!(center_density(LatticeKind::Zn, 3).truncated(3), "0.125");
    assert_eq!(center_density(LatticeKind::Dn, 3).truncated(6), "0.176776");
    assert_eq!(center_density(LatticeKind::Dn, 8).to_string(), "2^-5");
    for n in 2..20 {
        let z = center_density(LatticeKind::Zn, n).to_real(prec()).to_f64();
        let d = center_density(LatticeKind::Dn, n).to_real(prec()).to_f64();
        assert_eq!(z, 0.5f64.powi(n as i32));
        // ρ = √2/2, vol = 2
        let direct = (2f64.sqrt() / 2.0).powi(n as i32) / 2.0;
        assert!(((d - direct) / direct).abs() < 1e-14);
    }
}

#[test]
fn ratios() {
    let odd7 = ratio_asymptotics(7, Family::Odd).unwrap();
    assert_eq!(odd7.rel_ratio, pp(2, 1, 2));
    assert_eq!(odd7.nor_ratio, pp(2, 1, 7));
    let t4 = ratio_asymptotics(4, Family::PowerTwo).unwrap();
    assert_eq!(t4.rel_ratio, pp(2, 1, 4));
    assert_eq!(t4.nor_ratio, PowerProduct::one());
    let m6 = ratio_asymptotics(6, Family::Mixed).unwrap();
    let (rel_pub, nor_pub) = m6.erratum.unwrap();
    assert_eq!(nor_pub, pp(2, -5, 6));
    assert_eq!(rel_pub, pp(2, -1, 2));
    for (n, f) in [(4, Family::Odd), (6, Family::PowerTwo), (8, Family::Mixed), (1, Family::Odd)] {
        assert!(ratio_asymptotics(n, f).is_err(), "{n} {f}");
    }
}

#[test]
fn ratios_agree_with_recomputed_measures() {
    let cases = [(odd(5, None), Family::Odd), (two(4), Family::PowerTwo), (mixed(3, 3), Family::Mixed)];
    for (c, family) in cases {
        let z = comparative_distances(&closed_form_dpmin(&lattice(&c, LatticeKind::Zn), None)).unwrap();
        let dd = closed_form_dpmin(&lattice(&c, LatticeKind::Dn), None);
        let d = comparative_distances(&dd).unwrap();
        let r = ratio_asymptotics(c.dimension(), family).unwrap();
        assert_eq!(z.d_rel_root.div(&d.d_rel_root), r.rel_ratio, "{family}");
        assert_eq!(z.d_nor_root.div(&d.d_nor_root), r.nor_ratio, "{family}");
        if let (Some((rel, nor)), Some(e)) = (r.erratum, dd.erratum) {
            let n = c.dimension();
            let published = cyclo_lattice::metrics::comparative_from(&e.published, LatticeKind::Dn, n);
            assert_eq!(z.d_rel_root.div(&published.d_rel_root), rel);
            assert_eq!(z.d_nor_root.div(&published.d_nor_root), nor);
        }
    }
}

#[test]
fn published_cell_comparison() {
    assert!(agrees_with_published(&pp(29, -3, 7), "0.2361..."));
    assert!(!agrees_with_published(&pp(29, -3, 7), "0.2362..."));
    assert!(agrees_with_published(&pp(2, -3, 1), "0.125"));
    assert!(agrees_with_published(&pp(2, -11, 1), "0,000488..."));
    assert!(agrees_with_published(&pp(2, -8, 1), "0.00390625"));
    assert!(!agrees_with_published(&pp(2, -8, 1), "0.0039063"));
}

#[test]
fn table_one() {
    let t = table(1, prec()).unwrap();
    let ns: Vec<usize> = t.rows.iter().map(|r| r.row.n).collect();
    assert_eq!(ns, vec![3, 5, 7, 9, 11, 15]);
    assert_eq!(t.diagnostics.len(), 1);
    assert!(t.diagnostics[0].contains("p = 53") && t.diagnostics[0].contains("lower_bound"));
    let row7 = &t.rows[2];
    assert_eq!((row7.row.p, row7.row.r, row7.row.unit), (Some(29), Some(2), Some("1-u")));
    assert_eq!(row7.cells[0].rendered(), "0.2361");
    assert_eq!(row7.cells[1].rendered(), "0.1670");
    for tr in &t.rows {
        assert!(tr.row.orthonormal);
        if tr.row.n != 7 {
            assert_eq!(tr.row.unit, Some("1±u"));
        }
    }
    let flagged: Vec<(usize, &str)> = t.flagged().map(|(r, c)| (r.row.n, c.column)).collect();
    assert_eq!(flagged, vec![(9, "delta_zn"), (9, "delta_dn")]);
    assert_eq!(t.rows[3].cells[2].exact.to_string(), "2^-9");
    assert!(t.flagged().all(|(_, c)| c.flag.as_ref().unwrap().convention_agrees));
}

#[test]
fn table_two_and_three() {
    let t2 = table(2, prec()).unwrap();
    assert_eq!(t2.rows.len(), 6);
    let last = &t2.rows[5].row;
    assert_eq!((last.n, last.l, last.p, last.m, last.k), (14, Some(7), Some(29), Some(3), Some(2)));
    assert_eq!(t2.rows[5].cells[0].rendered(), "0.1404");
    let flagged: Vec<(usize, &str)> = t2.flagged().map(|(r, c)| (r.row.n, c.column)).collect();
    assert_eq!(flagged, vec![(6, "rel_dn"), (10, "rel_dn"), (12, "rel_dn"), (14, "rel_dn")]);
    assert!(t2.flagged().all(|(_, c)| c.flag.as_ref().unwrap().convention_agrees));

    let t3 = table(3, prec()).unwrap();
    assert_eq!(t3.rows.len(), 8);
    assert_eq!(t3.rows[7].cells[0].rendered(), "0.2278");
    for (r, c) in t3.flagged() {
        let f = c.flag.as_ref().unwrap();
        assert!(f.convention_agrees, "n = {} {}: {}", r.row.n, c.column, f.note);
        assert!(r.row.family != Family::PowerTwo);
    }
    // the power-of-two rows and every Z^n cell of the mixed rows agree
    for tr in &t3.rows {
        if tr.row.family != Family::Odd {
            assert_eq!(tr.cells[0].agrees, Some(true));
            assert_eq!(tr.cells[2].agrees, Some(true));
        }
    }
}
