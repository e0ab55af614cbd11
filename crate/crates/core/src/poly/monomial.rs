use std::fmt;

use super::var::Var;

/// Product of variables with positive exponents. Ordered by total weight
/// first, then lexicographically on the sorted factor list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial {
    weight: i32,
    factors: Vec<(Var, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: Var) -> Self {
        Monomial::pow(v, 1)
    }

    pub fn pow(v: Var, e: u32) -> Self {
        if e == 0 {
            return Monomial::one();
        }
        Monomial { weight: v.weight() * e as i32, factors: vec![(v, e)] }
    }

    pub fn from_factors<I: IntoIterator<Item = (Var, u32)>>(it: I) -> Self {
        let mut m = Monomial::one();
        for (v, e) in it {
            m = m.mul(&Monomial::pow(v, e));
        }
        m
    }

    pub fn weight(&self) -> i32 {
        self.weight
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.factors
    }

    pub fn exponent(&self, v: &Var) -> u32 {
        self.factors
            .binary_search_by(|(w, _)| w.cmp(v))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { weight: self.weight + other.weight, factors: out }
    }

    /// `m / v` together with the exponent of `v` in `m`, or `None` when `v ∤ m`.
    pub fn divide_var(&self, v: &Var) -> Option<(u32, Monomial)> {
        let idx = self.factors.binary_search_by(|(w, _)| w.cmp(v)).ok()?;
        let e = self.factors[idx].1;
        let mut factors = self.factors.clone();
        if e == 1 {
            factors.remove(idx);
        } else {
            factors[idx].1 -= 1;
        }
        Some((e, Monomial { weight: self.weight - v.weight(), factors }))
    }

    /// Splits off the factors selected by `pred`: `(selected, rest)`.
    pub fn split(&self, pred: impl Fn(&Var) -> bool) -> (Monomial, Monomial) {
        let (sel, rest): (Vec<_>, Vec<_>) = self.factors.iter().cloned().partition(|(v, _)| pred(v));
        let w = |f: &[(Var, u32)]| f.iter().map(|(v, e)| v.weight() * *e as i32).sum();
        (Monomial { weight: w(&sel), factors: sel }, Monomial { weight: w(&rest), factors: rest })
    }

    pub fn vars(&self) -> impl Iterator<Item = &Var> {
        self.factors.iter().map(|(v, _)| v)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiply_merges_exponents() {
        let a = Monomial::from_factors([(Var::Lambda(4), 1), (Var::Z(1), 2)]);
        let b = Monomial::from_factors([(Var::Z(1), 1), (Var::Z(3), 1)]);
        let c = a.mul(&b);
        assert_eq!(c.exponent(&Var::Z(1)), 3);
        assert_eq!(c.weight(), 4 - 3 - 3);
        assert_eq!(c.to_string(), "l4*z1^3*z3");
        let (e, q) = c.divide_var(&Var::Z(1)).unwrap();
        assert_eq!(e, 3);
        assert_eq!(q.weight(), c.weight() + 1);
        assert!(c.divide_var(&Var::Z(5)).is_none());
    }
}
