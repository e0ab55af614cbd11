//! Printed nonlinear systems `𝓛_{2k} ψ_j = w_{2k,j}` and the bracket tables
//! of `{𝓛_{2k}, ∂_k}`. `𝓛_{2k}` is stored as its `∂_z` part; the `L_{2k}`
//! part is implicit.

use crate::grammar::{parse_operator, parse_polynomial};
use crate::operator::DiffOperator;
use crate::poly::Polynomial;
use crate::rational::{int, ratio};

pub struct FrameTable {
    pub genus: u8,
    pub label: u8,
    /// `𝓛_{2k} − L_{2k}`.
    pub z_part: &'static str,
}

pub struct SourceTable {
    pub genus: u8,
    pub label: u8,
    pub index: u8,
    pub value: &'static str,
}

impl FrameTable {
    pub fn locus(&self) -> String {
        format!("nonlinear system, genus {}, operator {}", self.genus, self.label)
    }

    pub fn operator(&self) -> DiffOperator {
        parse_operator(self.z_part).expect("printed operator parses")
    }
}

impl SourceTable {
    pub fn locus(&self) -> String {
        format!("nonlinear system, genus {}, w[{},{}]", self.genus, self.label, self.index)
    }

    pub fn polynomial(&self) -> Polynomial {
        parse_polynomial(self.value).expect("printed source parses")
    }
}

macro_rules! frame {
    ($g:expr, $k:expr, $s:expr) => {
        FrameTable { genus: $g, label: $k, z_part: $s }
    };
}

macro_rules! source {
    ($g:expr, $k:expr, $j:expr, $s:expr) => {
        SourceTable { genus: $g, label: $k, index: $j, value: $s }
    };
}

pub const FRAME_TABLES: &[FrameTable] = &[
    frame!(1, 0, "-z1*d/dz1"),
    frame!(1, 2, "-psi[1]*d/dz1"),
    frame!(2, 0, "-z1*d/dz1 - 3*z3*d/dz3"),
    frame!(2, 2, "-psi[1]*d/dz1 + 4/5*l4*z3*d/dz1 - z1*d/dz3"),
    frame!(2, 4, "-psi[3]*d/dz1 + 6/5*l6*z3*d/dz1 - psi[1]*d/dz3 - l4*z3*d/dz3"),
    frame!(2, 6, "3/5*l8*z3*d/dz1 - psi[3]*d/dz3"),
    frame!(3, 0, "-z1*d/dz1 - 3*z3*d/dz3 - 5*z5*d/dz5"),
    frame!(3, 2, "-psi[1]*d/dz1 + 8/7*l4*z3*d/dz1 - z1*d/dz3 + 4/7*l4*z5*d/dz3 - 3*z3*d/dz5"),
    frame!(
        3,
        4,
        "-psi[3]*d/dz1 + 12/7*l6*z3*d/dz1 - psi[1]*d/dz3 - l4*z3*d/dz3 + 6/7*l6*z5*d/dz3 - z1*d/dz5 - 3*l4*z5*d/dz5"
    ),
    frame!(
        3,
        6,
        "-psi[5]*d/dz1 + 9/7*l8*z3*d/dz1 - psi[3]*d/dz3 + 8/7*l8*z5*d/dz3 - psi[1]*d/dz5 - l4*z3*d/dz5 - 2*l6*z5*d/dz5"
    ),
    frame!(3, 8, "6/7*l10*z3*d/dz1 - l12*z5*d/dz1 - psi[5]*d/dz3 + 10/7*l10*z5*d/dz3 - psi[3]*d/dz5 - l8*z5*d/dz5"),
    frame!(3, 10, "3/7*l12*z3*d/dz1 - 2*l14*z5*d/dz1 + 5/7*l12*z5*d/dz3 - psi[5]*d/dz5"),
];

pub const SOURCE_TABLES: &[SourceTable] = &[
    source!(1, 0, 1, "psi[1]"),
    source!(1, 2, 1, "1/2*psi[1,1,1] - 1/3*l4*z1"),
    source!(2, 0, 1, "psi[1]"),
    source!(2, 0, 3, "3*psi[3]"),
    source!(2, 2, 1, "1/2*psi[1,1,1] + psi[3] - 3/5*l4*z1"),
    source!(2, 2, 3, "1/2*psi[1,1,3] - 4/5*l4*psi[1] + 3*l8*z3 - 4/5*l4^2*z3"),
    source!(2, 4, 1, "psi[1,1,3] - 2/5*l6*z1 + l8*z3"),
    source!(2, 4, 3, "psi[1,3,3] - 6/5*l6*psi[1] + l4*psi[3] + l8*z1 + 6*l10*z3 + 6/5*l4*l6*z3"),
    source!(2, 6, 1, "1/2*psi[1,3,3] - 1/5*l8*z1 + 2*l10*z3"),
    source!(2, 6, 3, "1/2*psi[3,3,3] - 3/5*l8*psi[1] + 2*l10*z1 - 3/5*l4*l8*z3"),
    source!(3, 0, 1, "psi[1]"),
    source!(3, 0, 3, "3*psi[3]"),
    source!(3, 0, 5, "5*psi[5]"),
    source!(3, 2, 1, "1/2*psi[1,1,1] + psi[3] - 5/7*l4*z1"),
    source!(3, 2, 3, "1/2*psi[1,1,3] - 8/7*l8*psi[1] + 3*psi[5] + 3*l8*z3 - 8/7*l4^2*z3"),
    source!(3, 2, 5, "1/2*psi[1,1,5] - 4/7*l4*psi[3] + 5*l12*z5 - 4/7*l4*l8*z5"),
    source!(3, 4, 1, "psi[1,1,3] + psi[5] - 4/7*l6*z1 + l8*z3"),
    source!(3, 4, 3, "psi[1,3,3] - 12/7*l6*psi[1] + l4*psi[3] + l8*z1 + 6*l10*z3 - 12/7*l4*l6*z3 + 3*l12*z5"),
    source!(3, 4, 5, "psi[1,3,5] - 6/7*l6*psi[3] + 3*l4*psi[5] + 3*l12*z3 + 10*l14*z5 - 6/7*l6*l8*z5"),
    source!(3, 6, 1, "1/2*psi[1,3,3] + psi[1,1,5] - 3/7*l6*z1 + 2*l10*z3 + l12*z5"),
    source!(3, 6, 3, "1/2*psi[3,3,3] + psi[1,3,5] - 9/7*l8*psi[1] + l4*psi[5] + 2*l10*z1 + 9*l12*z3 - 9/7*l4*l8*z3 + 6*l14*z5"),
    source!(
        3,
        6,
        5,
        "1/2*psi[3,3,5] + psi[1,5,5] - 8/7*l8*psi[3] + 2*l6*psi[5] + l12*z1 + 6*l14*z3 + 3*l4*l12*z5 - 8/7*l8^2*z5"
    ),
    source!(3, 8, 1, "psi[1,3,5] - 2/7*l10*z1 + 3*l12*z3 + 2*l14*z5"),
    source!(3, 8, 3, "psi[3,3,5] - 6/7*l10*psi[1] + 3*l12*z1 + 12*l14*z3 - 6/7*l4*l10*z3 + l4*l12*z5"),
    source!(
        3,
        8,
        5,
        "psi[3,5,5] + l12*psi[1] - 10/7*l10*psi[3] + l8*psi[5] + 2*l14*z1 + l4*l12*z3 + 6*l4*l14*z5 + 2*l6*l12*z5 - 10/7*l8*l10*z5"
    ),
    source!(3, 10, 1, "1/2*psi[1,5,5] - 1/7*l12*z1 + 4*l14*z3"),
    source!(3, 10, 3, "1/2*psi[3,5,5] - 3/7*l12*psi[1] + 4*l14*z1 - 3/7*l4*l12*z3 + 2*l4*l14*z5"),
    source!(3, 10, 5, "1/2*psi[5,5,5] + 2*l14*psi[1] - 5/7*l12*psi[3] + 2*l4*l14*z3 + 4*l6*l14*z5 - 5/7*l8*l12*z5"),
];

pub fn frame_table(genus: u8, label: u8) -> Option<&'static FrameTable> {
    FRAME_TABLES.iter().find(|t| t.genus == genus && t.label == label)
}

pub fn source_table(genus: u8, label: u8, index: u8) -> Option<&'static SourceTable> {
    SOURCE_TABLES.iter().find(|t| t.genus == genus && t.label == label && t.index == index)
}

/// `[∂_k, 𝓛_{2s}] = sign · R ∂ + Σ factor · column · ∂_j`, one row per
/// `s ≥ 1`, matrix columns in the order `∂_1, ∂_3, …`.
pub struct PartialBracketTable {
    pub genus: u8,
    pub partial: u8,
    pub sign: i64,
    pub rows: &'static [&'static [&'static str]],
    /// `(j, factor, column)`: an extra `factor · column · ∂_j`.
    pub extra: &'static [(u8, (i64, i64), &'static [&'static str])],
}

impl PartialBracketTable {
    /// Coefficients on `∂_1, ∂_3, …` of row `r`.
    pub fn row(&self, r: usize) -> Vec<Polynomial> {
        let mut out: Vec<Polynomial> = self.rows[r]
            .iter()
            .map(|s| parse_polynomial(s).expect("printed entry parses").scale(&int(self.sign)))
            .collect();
        for (j, (n, d), column) in self.extra {
            let c = parse_polynomial(column[r]).expect("printed entry parses");
            out[(*j / 2) as usize] += c.scale(&ratio(*n, *d));
        }
        out
    }
}

pub const PARTIAL_BRACKETS: &[PartialBracketTable] = &[
    PartialBracketTable { genus: 1, partial: 1, sign: 1, rows: &[&["-psi[1,1]"]], extra: &[] },
    PartialBracketTable {
        genus: 2,
        partial: 1,
        sign: 1,
        rows: &[&["-psi[1,1]", "-1"], &["-psi[1,3]", "-psi[1,1]"], &["0", "-psi[1,3]"]],
        extra: &[],
    },
    PartialBracketTable {
        genus: 2,
        partial: 3,
        sign: 1,
        rows: &[&["-psi[1,3] + 4/5*l4", "0"], &["-psi[3,3] + 6/5*l6", "-psi[1,3] - l4"], &["3/5*l8", "-psi[3,3]"]],
        extra: &[],
    },
    PartialBracketTable {
        genus: 3,
        partial: 1,
        sign: -1,
        rows: &[
            &["psi[1,1]", "1", "0"],
            &["psi[1,3]", "psi[1,1]", "1"],
            &["psi[1,5]", "psi[1,3]", "psi[1,1]"],
            &["0", "psi[1,5]", "psi[1,3]"],
            &["0", "0", "psi[1,5]"],
        ],
        extra: &[],
    },
    PartialBracketTable {
        genus: 3,
        partial: 3,
        sign: -1,
        rows: &[
            &["psi[1,3] + l4", "0", "3"],
            &["psi[3,3]", "psi[1,3] + l4", "0"],
            &["psi[3,5]", "psi[3,3]", "psi[1,3] + l4"],
            &["0", "psi[3,5]", "psi[3,3]"],
            &["0", "0", "psi[3,5]"],
        ],
        extra: &[(1, (3, 7), &["5*l4", "4*l6", "3*l8", "2*l10", "l12"])],
    },
    PartialBracketTable {
        genus: 3,
        partial: 5,
        sign: -1,
        rows: &[
            &["psi[1,5]", "0", "0"],
            &["psi[3,5]", "psi[1,5]", "0"],
            &["psi[5,5]", "psi[3,5]", "psi[1,5]"],
            &["l12", "psi[5,5]", "psi[3,5]"],
            &["2*l14", "l12", "psi[5,5]"],
        ],
        extra: &[
            (3, (2, 7), &["2*l4", "3*l6", "4*l8", "5*l10", "6*l12"]),
            (5, (-1, 1), &["0", "3*l4", "2*l6", "l8", "0"]),
        ],
    },
];

/// The `∂` part of `[𝓛_{2i}, 𝓛_{2j}]`, `0 < i < j`, rows in the order of
/// the structure matrix, scaled by `1/2`.
pub struct CorrectionTable {
    pub genus: u8,
    pub rows: &'static [&'static [&'static str]],
}

impl CorrectionTable {
    pub fn row(&self, r: usize) -> Vec<Polynomial> {
        self.rows[r]
            .iter()
            .map(|s| parse_polynomial(s).expect("printed entry parses").scale(&ratio(1, 2)))
            .collect()
    }
}

pub const CORRECTIONS: &[CorrectionTable] = &[
    CorrectionTable {
        genus: 2,
        rows: &[
            &["psi[1,1,3]", "-psi[1,1,1]"],
            &["psi[1,3,3]", "-psi[1,1,3]"],
            &["psi[3,3,3]", "-psi[1,3,3]"],
        ],
    },
    CorrectionTable {
        genus: 3,
        rows: &[
            &["psi[1,1,3]", "-psi[1,1,1]", "0"],
            &["psi[1,3,3] + psi[1,1,5]", "-psi[1,1,3]", "-psi[1,1,1]"],
            &["2*psi[1,3,5]", "-psi[1,1,5]", "-psi[1,1,3]"],
            &["psi[1,5,5]", "0", "-psi[1,1,5]"],
            &["psi[3,3,3]", "-psi[1,3,3] + 2*psi[1,1,5]", "-2*psi[1,1,3]"],
            &["2*psi[3,3,5]", "0", "-2*psi[1,3,3]"],
            &["psi[3,5,5]", "psi[1,5,5]", "-2*psi[1,3,5]"],
            &["2*psi[3,5,5]", "-2*psi[1,5,5] + psi[3,3,5]", "-psi[3,3,3]"],
            &["psi[5,5,5]", "psi[3,5,5]", "-psi[3,3,5] - psi[1,5,5]"],
            &["0", "psi[5,5,5]", "-psi[3,5,5]"],
        ],
    },
];

pub fn partial_brackets(genus: u8, partial: u8) -> Option<&'static PartialBracketTable> {
    PARTIAL_BRACKETS.iter().find(|t| t.genus == genus && t.partial == partial)
}

pub fn corrections(genus: u8) -> Option<&'static CorrectionTable> {
    CORRECTIONS.iter().find(|t| t.genus == genus)
}
