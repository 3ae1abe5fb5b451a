//! Published reference values for the acceptance suite, transcribed
//! independently of the library, plus plain-decimal helpers.

/// First rows of the `Z^7` and `D_7` generator matrices for `p = 29`, scaled by 29.
pub const EXAMPLE1_ZN_ROW: [f64; 7] = [-19.747, 4.729, -13.016, 2.244, 2.387, 7.991, -13.588];
pub const EXAMPLE1_DN_ROW: [f64; 7] = [15.017, 8.286, 10.772, -4.631, -10.378, 5.597, 33.335];

/// `u = -ζ - ζ^12 - ζ^17 - ζ^28` in `Q(ζ_29)` as `(exponent, coefficient)`.
pub const EXAMPLE2_U: [(i64, i64); 4] = [(1, -1), (12, -1), (17, -1), (28, -1)];

/// `n = 13` primes where `u` is not an algebraic integer.
pub const REMARK_NON_INTEGRAL: [usize; 3] = [131, 157, 313];
/// `n = 13` primes where `u` is integral but neither `1 + u` nor `1 - u` is a unit.
pub const REMARK_NO_UNIT: [usize; 2] = [53, 79];

/// One printed row: the key (`l` or `n`) and its four numeric cells, verbatim.
#[derive(Debug, Clone, Copy)]
pub struct PrintedRow {
    pub key: usize,
    pub cells: [&'static str; 4],
}

const fn row(key: usize, cells: [&'static str; 4]) -> PrintedRow {
    PrintedRow { key, cells }
}

/// Odd dimensions: relative distance roots for `Z^l`, `D_l`, then `δ(Z^l)`, `δ(D_l)`.
pub const TABLE1: [PrintedRow; 6] = [
    row(3, ["0.5227...", "0.3696...", "0.125", "0.176776..."]),
    row(5, ["0.3832...", "0.2709...", "0.031250...", "0.088388..."]),
    row(7, ["0.2361...", "0.1670...", "0.007812...", "0.044194..."]),
    row(9, ["0.2701...", "0.1910...", "0,2701...", "0,1910..."]),
    row(11, ["0.2404...", "0.1700...", "0,000488...", "0.011048..."]),
    row(15, ["0.2013...", "0.1424...", "0,000030...", "0.002762..."]),
];

/// Table 1 parameters: `(l, p, r, unit column)`.
pub const TABLE1_PARAMS: [(usize, usize, usize, &str); 6] = [
    (3, 7, 3, "1±u"),
    (5, 11, 2, "1±u"),
    (7, 29, 2, "1-u"),
    (9, 19, 2, "1±u"),
    (11, 23, 5, "1±u"),
    (15, 31, 3, "1±u"),
];

/// Even dimensions, relative distance roots and densities.
pub const TABLE2: [PrintedRow; 6] = [
    row(4, ["0.3855...", "0.3242...", "0.0625...", "0.125"]),
    row(6, ["0.3108...", "0.4395...", "0.015625", "0.0625"]),
    row(8, ["0.2610...", "0.2013...", "0.003906...", "0.03125"]),
    row(10, ["0.2278...", "0.3222...", "0.000976...", "0.015625"]),
    row(12, ["0.2015...", "0.2850...", "0.000244...", "0.0078125"]),
    row(14, ["0.1404...", "0.1986...", "0.000061...", "0.00390625"]),
];

/// Normalized distance roots and densities, `n = 3..10`.
pub const TABLE3: [PrintedRow; 8] = [
    row(3, ["0.1428...", "0.1133...", "0.0625...", "0.125"]),
    row(4, ["0.3855...", "0.3855...", "0.0625...", "0.125"]),
    row(5, ["0.0082...", "0.0071...", "0.0625...", "0.125"]),
    row(6, ["0.3108...", "0.5538...", "0.015625", "0.0625"]),
    row(7, ["0.00004...", "0.00003...", "0.0625...", "0.125"]),
    row(8, ["0.2610...", "0.2610...", "0.003906...", "0.03125"]),
    row(9, ["0.000007...", "0.000007...", "0.0625...", "0.125"]),
    row(10, ["0.2278...", "0.4252...", "0.000976...", "0.015625"]),
];

/// Printed cell as a plain decimal with `,` read as `.` and the trailing
/// ellipsis dropped, plus the number of printed decimals.
pub fn normalize_printed(cell: &str) -> (String, usize) {
    let s = cell.trim().trim_end_matches('.').replace(',', ".");
    let decimals = s.split_once('.').map_or(0, |(_, f)| f.len());
    (s, decimals)
}

/// Truncates a plain non-negative decimal string to `places` decimals,
/// padding with zeros.
pub fn truncate_decimal(s: &str, places: usize) -> String {
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let mut f: String = frac.chars().take(places).collect();
    while f.len() < places {
        f.push('0');
    }
    if places == 0 {
        int.to_string()
    } else {
        format!("{int}.{f}")
    }
}

/// A recomputed value (plain decimal with enough digits) agrees with a
/// printed cell when both truncate to the same `max(printed decimals, min_places)` digits.
pub fn cell_agrees(value: &str, printed: &str, min_places: usize) -> bool {
    let (p, decimals) = normalize_printed(printed);
    let places = decimals.max(min_places);
    truncate_decimal(value, places) == truncate_decimal(&p, places)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_cells() {
        assert_eq!(normalize_printed("0,000488..."), ("0.000488".into(), 6));
        assert_eq!(normalize_printed("0.125"), ("0.125".into(), 3));
        assert!(cell_agrees("0.236184621", "0.2361...", 4));
        assert!(cell_agrees("0.125", "0.125", 4));
        assert!(cell_agrees("0.270184", "0,2701...", 4));
        assert!(!cell_agrees("0.001953125", "0,2701...", 4));
        assert_eq!(truncate_decimal("0.00390625", 4), "0.0039");
    }
}
