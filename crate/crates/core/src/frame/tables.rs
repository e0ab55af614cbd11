//! Printed ground-truth data: the frame matrices `T`, the structure
//! matrices `M` of the bracket tables, and the Schrödinger parts `H_{2k}`
//! of the heat operators. Each `H` is stored term by term so a mismatch can
//! be traced to one printed term.

use crate::grammar::{parse_operator, parse_polynomial};
use crate::operator::DiffOperator;
use crate::poly::Polynomial;
use crate::rational::{ratio, Rational};

/// A printed matrix: `factor_a · A − factor_b · B` (B may be empty).
pub struct PrintedMatrix {
    pub locus: &'static str,
    pub main: &'static [&'static [&'static str]],
    pub correction: &'static [&'static [&'static str]],
    pub correction_factor: (i64, i64),
}

impl PrintedMatrix {
    pub fn size(&self) -> usize {
        self.main.len()
    }

    pub fn entry(&self, r: usize, c: usize) -> Polynomial {
        let a = parse_polynomial(self.main[r][c]).expect("printed table entry parses");
        if self.correction.is_empty() {
            return a;
        }
        let b = parse_polynomial(self.correction[r][c]).expect("printed table entry parses");
        let (n, d) = self.correction_factor;
        &a - &b.scale(&ratio(n, d))
    }
}

pub const T_GENUS1: PrintedMatrix = PrintedMatrix {
    locus: "frame matrix T, genus 1",
    main: &[&["4*l4", "6*l6"], &["6*l6", "-4/3*l4^2"]],
    correction: &[],
    correction_factor: (0, 1),
};

pub const T_GENUS2: PrintedMatrix = PrintedMatrix {
    locus: "frame matrix T, genus 2",
    main: &[
        &["4*l4", "6*l6", "8*l8", "10*l10"],
        &["6*l6", "8*l8", "10*l10", "0"],
        &["8*l8", "10*l10", "4*l4*l8", "6*l4*l10"],
        &["10*l10", "0", "6*l4*l10", "4*l6*l10"],
    ],
    correction: &[
        &["0", "0", "0", "0"],
        &["0", "12*l4^2", "8*l4*l6", "4*l4*l8"],
        &["0", "8*l4*l6", "12*l6^2", "6*l6*l8"],
        &["0", "4*l4*l8", "6*l6*l8", "8*l8^2"],
    ],
    correction_factor: (1, 5),
};

pub const T_GENUS3: PrintedMatrix = PrintedMatrix {
    locus: "frame matrix T, genus 3",
    main: &[
        &["4*l4", "6*l6", "8*l8", "10*l10", "12*l12", "14*l14"],
        &["6*l6", "8*l8", "10*l10", "12*l12", "14*l14", "0"],
        &["8*l8", "10*l10", "12*l12 + 4*l4*l8", "14*l14 + 6*l4*l10", "8*l4*l12", "10*l4*l14"],
        &["10*l10", "12*l12", "14*l14 + 6*l4*l10", "4*l6*l10 + 8*l4*l12", "6*l6*l12 + 10*l4*l14", "8*l6*l14"],
        &["12*l12", "14*l14", "8*l4*l12", "6*l6*l12 + 10*l4*l14", "4*l8*l12 + 8*l6*l14", "6*l8*l14"],
        &["14*l14", "0", "10*l4*l14", "8*l6*l14", "6*l8*l14", "4*l10*l14"],
    ],
    correction: &[
        &["0", "0", "0", "0", "0", "0"],
        &["0", "20*l4^2", "16*l4*l6", "12*l4*l8", "8*l4*l10", "4*l4*l12"],
        &["0", "16*l4*l6", "24*l6^2", "18*l6*l8", "12*l6*l10", "6*l6*l12"],
        &["0", "12*l4*l8", "18*l6*l8", "24*l8^2", "16*l8*l10", "8*l8*l12"],
        &["0", "8*l4*l10", "12*l6*l10", "16*l8*l10", "20*l10^2", "10*l10*l12"],
        &["0", "4*l4*l12", "6*l6*l12", "8*l8*l12", "10*l10*l12", "12*l12^2"],
    ],
    correction_factor: (1, 7),
};

pub fn printed_t(genus: u8) -> Option<&'static PrintedMatrix> {
    match genus {
        1 => Some(&T_GENUS1),
        2 => Some(&T_GENUS2),
        3 => Some(&T_GENUS3),
        _ => None,
    }
}

/// Printed structure matrix: row `r` gives the coefficients of the bracket
/// `[X_i, X_j]` (pairs `0 < i < j` in lexicographic order) over the frame.
pub struct StructureTable {
    pub locus: &'static str,
    pub factor: (i64, i64),
    pub rows: &'static [&'static [&'static str]],
}

impl StructureTable {
    pub fn factor(&self) -> Rational {
        ratio(self.factor.0, self.factor.1)
    }

    pub fn row(&self, r: usize) -> Vec<Polynomial> {
        self.rows[r]
            .iter()
            .map(|s| parse_polynomial(s).expect("printed table entry parses").scale(&self.factor()))
            .collect()
    }
}

pub const M_GENUS2: StructureTable = StructureTable {
    locus: "structure matrix M, genus 2",
    factor: (2, 5),
    rows: &[
        &["4*l6", "-4*l4", "0", "5"],
        &["2*l8", "0", "-2*l4", "0"],
        &["-5*l10", "3*l8", "-3*l6", "5*l4"],
    ],
};

pub const M_GENUS3: StructureTable = StructureTable {
    locus: "structure matrix M, genus 3",
    factor: (2, 7),
    rows: &[
        &["8*l6", "-8*l4", "0", "7", "0", "0"],
        &["6*l8", "0", "-6*l4", "0", "14", "0"],
        &["4*l10", "0", "0", "-4*l4", "0", "21"],
        &["2*l12", "0", "0", "0", "-2*l4", "0"],
        &["-7*l10", "9*l8", "-9*l6", "7*l4", "0", "7"],
        &["-14*l12", "6*l10", "0", "-6*l6", "14*l4", "0"],
        &["-21*l14", "3*l12", "0", "0", "-3*l6", "21*l4"],
        &["-7*l14", "-7*l12", "8*l10", "-8*l8", "7*l6", "7*l4"],
        &["0", "-14*l14", "4*l12", "0", "-4*l8", "14*l6"],
        &["0", "0", "-7*l14", "5*l12", "-5*l10", "7*l8"],
    ],
};

pub fn printed_m(genus: u8) -> Option<&'static StructureTable> {
    match genus {
        2 => Some(&M_GENUS2),
        3 => Some(&M_GENUS3),
        _ => None,
    }
}

/// Printed `H_{2k}`, one string per printed term group.
pub struct HeatTable {
    pub genus: u8,
    pub label: u8,
    pub terms: &'static [&'static str],
}

impl HeatTable {
    pub fn locus(&self) -> String {
        format!("heat operator table, genus {}, H{}", self.genus, self.label)
    }

    pub fn operator(&self) -> DiffOperator {
        let mut op = DiffOperator::zero();
        for t in self.terms {
            op = &op + &parse_operator(t).expect("printed heat term parses");
        }
        op
    }
}

pub const HEAT_TABLES: &[HeatTable] = &[
    HeatTable { genus: 1, label: 0, terms: &["z1*d/dz1", "-1"] },
    HeatTable { genus: 1, label: 2, terms: &["1/2*d/dz1^2", "-1/6*l4*z1^2"] },
    HeatTable { genus: 2, label: 0, terms: &["z1*d/dz1", "3*z3*d/dz3", "-3"] },
    HeatTable {
        genus: 2,
        label: 2,
        terms: &["1/2*d/dz1^2", "-4/5*l4*z3*d/dz1", "z1*d/dz3", "-3/10*l4*z1^2", "3/2*l8*z3^2 - 2/5*l4^2*z3^2"],
    },
    HeatTable {
        genus: 2,
        label: 4,
        terms: &[
            "d/dz1*d/dz3",
            "-6/5*l6*z3*d/dz1",
            "l4*z3*d/dz3",
            "-1/5*l6*z1^2",
            "l8*z1*z3",
            "3*l10*z3^2 - 3/5*l4*l6*z3^2",
            "-l4",
        ],
    },
    HeatTable {
        genus: 2,
        label: 6,
        terms: &["1/2*d/dz3^2", "-3/5*l8*z3*d/dz1", "-1/10*l8*z1^2", "2*l10*z1*z3", "-3/10*l4*l8*z3^2", "-1/2*l6"],
    },
    HeatTable { genus: 3, label: 0, terms: &["z1*d/dz1", "3*z3*d/dz3", "5*z5*d/dz5", "-6"] },
    HeatTable {
        genus: 3,
        label: 2,
        terms: &[
            "1/2*d/dz1^2",
            "-8/7*l4*z3*d/dz1",
            "z1*d/dz3 - 4/7*l4*z5*d/dz3",
            "3*z3*d/dz5",
            "-5/14*l4*z1^2",
            "3/2*l8*z3^2 - 4/7*l4^2*z3^2",
            "5/2*l12*z5^2 - 2/7*l4*l8*z5^2",
        ],
    },
    HeatTable {
        genus: 3,
        label: 4,
        terms: &[
            "d/dz1*d/dz3",
            "-12/7*l6*z3*d/dz1",
            "l4*z3*d/dz3 - 6/7*l6*z5*d/dz3",
            "z1*d/dz5 + 3*l4*z5*d/dz5",
            "-2/7*l6*z1^2",
            "l8*z1*z3",
            "3*l10*z3^2 - 6/7*l4*l6*z3^2",
            "3*l12*z3*z5",
            "5*l14*z5^2 - 3/7*l6*l8*z5^2",
            "-3*l4",
        ],
    },
    HeatTable {
        genus: 3,
        label: 6,
        terms: &[
            "1/2*d/dz3^2",
            "d/dz1*d/dz5",
            "-9/7*l8*z3*d/dz1",
            "-8/7*l8*z5*d/dz3",
            "l4*z3*d/dz5 + 2*l6*z5*d/dz5",
            "-3/14*l8*z1^2",
            "2*l10*z1*z3",
            "9/2*l12*z3^2 - 9/14*l4*l8*z3^2",
            "l12*z1*z5",
            "6*l14*z3*z5",
            "3/2*l4*l12*z5^2 - 4/7*l8^2*z5^2",
            "-2*l6",
        ],
    },
    HeatTable {
        genus: 3,
        label: 8,
        terms: &[
            "d/dz3*d/dz5",
            "-6/7*l10*z3*d/dz1 + l12*z5*d/dz1",
            "-10/7*l10*z5*d/dz3",
            "l8*z5*d/dz5",
            "-1/7*l10*z1^2",
            "3*l12*z1*z3",
            "6*l14*z3^2 - 3/7*l4*l10*z3^2",
            "2*l14*z1*z5",
            "l4*l12*z3*z5",
            "3*l4*l14*z5^2 + l6*l12*z5^2 - 5/7*l8*l10*z5^2",
            "-l8",
        ],
    },
    HeatTable {
        genus: 3,
        label: 10,
        terms: &[
            "1/2*d/dz5^2",
            "-3/7*l12*z3*d/dz1 + 2*l14*z5*d/dz1",
            "-5/7*l12*z5*d/dz3",
            "-1/14*l12*z1^2",
            "4*l14*z1*z3",
            "-3/14*l4*l12*z3^2",
            "2*l4*l14*z3*z5",
            "2*l6*l14*z5^2 - 5/14*l8*l12*z5^2",
            "-1/2*l10",
        ],
    },
];

pub fn heat_table(genus: u8, label: u8) -> Option<&'static HeatTable> {
    HEAT_TABLES.iter().find(|t| t.genus == genus && t.label == label)
}
