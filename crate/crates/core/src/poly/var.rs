use std::fmt;

use crate::error::Error;

/// Sorted multi-index over odd labels, the subscript of a log-derivative
/// symbol `psi[1,1,3]`. Sorting is canonical because partials commute.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct JetIndex(Vec<u8>);

impl JetIndex {
    pub fn new(mut labels: Vec<u8>) -> Result<Self, Error> {
        if labels.is_empty() {
            return Err(Error::InvalidVariable("empty jet index".into()));
        }
        if let Some(bad) = labels.iter().find(|k| **k % 2 == 0) {
            return Err(Error::InvalidVariable(format!("jet label {bad} is not odd")));
        }
        labels.sort_unstable();
        Ok(JetIndex(labels))
    }

    pub fn single(k: u8) -> Self {
        JetIndex::new(vec![k]).expect("odd label")
    }

    pub fn labels(&self) -> &[u8] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> i32 {
        self.0.iter().map(|&k| k as i32).sum()
    }

    /// `I ∪ {k}` as a multiset.
    pub fn with(&self, k: u8) -> Self {
        let mut v = self.0.clone();
        let pos = v.partition_point(|&x| x <= k);
        v.insert(pos, k);
        JetIndex(v)
    }

    /// Removes one occurrence of the first label, returning it and the rest.
    pub fn split_first(&self) -> (u8, Option<JetIndex>) {
        let first = self.0[0];
        if self.0.len() == 1 {
            (first, None)
        } else {
            (first, Some(JetIndex(self.0[1..].to_vec())))
        }
    }

    /// All sorted multi-indices over `labels` with `1 <= len <= max_order`.
    pub fn enumerate(labels: &[u8], max_order: usize) -> Vec<JetIndex> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        fn rec(labels: &[u8], start: usize, max: usize, cur: &mut Vec<u8>, out: &mut Vec<JetIndex>) {
            if !cur.is_empty() {
                out.push(JetIndex(cur.clone()));
            }
            if cur.len() == max {
                return;
            }
            for i in start..labels.len() {
                cur.push(labels[i]);
                rec(labels, i, max, cur, out);
                cur.pop();
            }
        }
        rec(labels, 0, max_order, &mut current, &mut out);
        out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
        out
    }
}

impl fmt::Display for JetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// A polynomial variable. The derived ordering (λ, then z, then ψ, then the
/// transient log-symbols) is the lexicographic minor key of the term order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Var {
    Lambda(u8),
    Z(u8),
    Psi(JetIndex),
    /// `ln φ` itself; weight 0.
    LnPhi,
    /// `L_{2k} ln φ`, storing the weight `2k`.
    LnPhiImage(u8),
}

impl Var {
    pub fn lambda(k: u8) -> Result<Var, Error> {
        if !k.is_multiple_of(2) || k < 4 {
            return Err(Error::InvalidVariable(format!("lambda index {k} must be even and >= 4")));
        }
        Ok(Var::Lambda(k))
    }

    pub fn z(k: u8) -> Result<Var, Error> {
        if k.is_multiple_of(2) {
            return Err(Error::InvalidVariable(format!("z index {k} must be odd")));
        }
        Ok(Var::Z(k))
    }

    pub fn psi(labels: &[u8]) -> Result<Var, Error> {
        Ok(Var::Psi(JetIndex::new(labels.to_vec())?))
    }

    pub fn weight(&self) -> i32 {
        match self {
            Var::Lambda(k) => *k as i32,
            Var::Z(k) => -(*k as i32),
            Var::Psi(idx) => idx.weight(),
            Var::LnPhi => 0,
            Var::LnPhiImage(w) => *w as i32,
        }
    }

    pub fn is_aux(&self) -> bool {
        matches!(self, Var::LnPhi | Var::LnPhiImage(_))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Lambda(k) => write!(f, "l{k}"),
            Var::Z(k) => write!(f, "z{k}"),
            Var::Psi(idx) => write!(f, "psi{idx}"),
            Var::LnPhi => write!(f, "lnphi"),
            Var::LnPhiImage(w) => write!(f, "Llnphi{w}"),
        }
    }
}

/// Variable ranges for one genus: `z_1 … z_{2g-1}`, `λ_4 … λ_{4g+2}`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord, Hash)]
pub struct Genus(u8);

impl Genus {
    pub fn new(g: u8) -> Result<Self, Error> {
        if g == 0 {
            return Err(Error::UnsupportedGenus(0));
        }
        Ok(Genus(g))
    }

    pub fn get(self) -> u8 {
        self.0
    }

    pub fn z_labels(self) -> Vec<u8> {
        (0..self.0).map(|i| 2 * i + 1).collect()
    }

    pub fn lambda_labels(self) -> Vec<u8> {
        (2..=2 * self.0 + 1).map(|s| 2 * s).collect()
    }

    pub fn has_lambda(self, s: u8) -> bool {
        s.is_multiple_of(2) && (4..=4 * self.0 + 2).contains(&s)
    }

    pub fn has_z(self, k: u8) -> bool {
        k % 2 == 1 && k < 2 * self.0
    }

    /// Checks that a variable belongs to this genus' alphabet.
    pub fn contains(self, v: &Var) -> bool {
        match v {
            Var::Lambda(s) => self.has_lambda(*s),
            Var::Z(k) => self.has_z(*k),
            Var::Psi(idx) => idx.labels().iter().all(|k| self.has_z(*k)),
            Var::LnPhi => true,
            Var::LnPhiImage(w) => *w as u32 <= 8 * self.0 as u32,
        }
    }

    /// Weight of sigma, `g(g+1)/2`; the series solver targets weight `-n`.
    pub fn sigma_weight(self) -> i32 {
        let g = self.0 as i32;
        g * (g + 1) / 2
    }
}

impl fmt::Display for Genus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
