use std::fmt;

use num_traits::{One, Zero};

use crate::rational::{half, q, Q};

/// Free-product expression over `ℂ`, `LZ`, `R`, `LF_t`, `M₂(·)`, the
/// uniform direct sum and `∗`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    C,
    LZ,
    R,
    /// `LF_t`, `t = 0` or `t ≥ 1`.
    LF(Q),
    Mat2(Box<Expr>),
    /// `A ⊕ B` with trace weights `½, ½`.
    Sum(Box<Expr>, Box<Expr>),
    /// n-ary free product, `n ≥ 2`, in source order.
    Free(Vec<Expr>),
}

impl Expr {
    pub fn lf(t: Q) -> Expr {
        Expr::LF(t)
    }

    pub fn mat(e: Expr) -> Expr {
        Expr::Mat2(Box::new(e))
    }

    pub fn sum(a: Expr, b: Expr) -> Expr {
        Expr::Sum(Box::new(a), Box::new(b))
    }

    /// `2ᵏ`-fold iterated `M₂`.
    pub fn mat_pow(e: Expr, k: u32) -> Expr {
        (0..k).fold(e, |acc, _| Expr::mat(acc))
    }

    /// Balanced direct sum of `2ᵏ` copies.
    pub fn sum_pow(e: Expr, k: u32) -> Expr {
        (0..k).fold(e, |acc, _| Expr::sum(acc.clone(), acc))
    }

    /// Balanced direct sum of a list whose length is a power of two.
    pub fn balanced_sum(mut items: Vec<Expr>) -> Option<Expr> {
        if items.is_empty() || !items.len().is_power_of_two() {
            return None;
        }
        while items.len() > 1 {
            let mut next = Vec::with_capacity(items.len() / 2);
            let mut it = items.into_iter();
            while let (Some(a), Some(b)) = (it.next(), it.next()) {
                next.push(Expr::sum(a, b));
            }
            items = next;
        }
        items.pop()
    }

    /// Free product; a single factor is returned as is.
    pub fn free(mut items: Vec<Expr>) -> Expr {
        if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Expr::Free(items)
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Expr::C | Expr::LZ | Expr::R | Expr::LF(_) => 1,
            Expr::Mat2(x) => 1 + x.size(),
            Expr::Sum(a, b) => 1 + a.size() + b.size(),
            Expr::Free(v) => 1 + v.iter().map(Expr::size).sum::<usize>(),
        }
    }

    /// Free dimension: `ℂ ↦ 0`, `LZ, R ↦ 1`, `LF_t ↦ t`,
    /// `A ⊕ B ↦ ¼(a + b) + ½`, `M₂(B) ↦ 1 + (b − 1)/4`, `A ∗ B ↦ a + b`.
    pub fn fdim(&self) -> Q {
        match self {
            Expr::C => Q::zero(),
            Expr::LZ | Expr::R => Q::one(),
            Expr::LF(t) => t.clone(),
            Expr::Mat2(x) => q(1) + (x.fdim() - q(1)) / q(4),
            Expr::Sum(a, b) => (a.fdim() + b.fdim()) / q(4) + half(),
            Expr::Free(v) => v.iter().map(Expr::fdim).fold(Q::zero(), |a, b| a + b),
        }
    }

    fn sum_power(&self) -> (&Expr, u64) {
        match self {
            Expr::Sum(a, b) if a == b => {
                let (base, k) = a.sum_power();
                (base, 2 * k)
            }
            other => (other, 1),
        }
    }

    fn mat_depth(&self) -> (&Expr, u32) {
        match self {
            Expr::Mat2(x) => {
                let (base, d) = x.mat_depth();
                (base, d + 1)
            }
            other => (other, 0),
        }
    }

    fn fmt_operand(&self, f: &mut fmt::Formatter<'_>, wrap_sum: bool) -> fmt::Result {
        let needs = match self {
            Expr::Free(_) => true,
            Expr::Sum(..) => wrap_sum,
            _ => false,
        };
        if needs {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::C => f.write_str("C"),
            Expr::LZ => f.write_str("LZ"),
            Expr::R => f.write_str("R"),
            Expr::LF(t) => write!(f, "LF({t})"),
            Expr::Mat2(_) => {
                let (base, d) = self.mat_depth();
                let size = 1u128 << d.min(127);
                write!(f, "M{size}({base})")
            }
            Expr::Sum(a, b) => {
                let (base, k) = self.sum_power();
                if k > 1 {
                    base.fmt_operand(f, true)?;
                    write!(f, "^{k}")
                } else {
                    a.fmt_operand(f, true)?;
                    f.write_str(" (+) ")?;
                    b.fmt_operand(f, true)
                }
            }
            Expr::Free(v) => {
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" * ")?;
                    }
                    x.fmt_operand(f, false)?;
                }
                Ok(())
            }
        }
    }
}

/// Innermost part of a normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Core {
    C,
    R,
    /// `LF_t` with `t ≥ 1` (`LZ` is `LF₁`).
    LF(Q),
}

/// `M₂ⁿ(core)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalForm {
    pub depth: u32,
    pub core: Core,
}

impl NormalForm {
    pub fn parameter(&self) -> Option<&Q> {
        match &self.core {
            Core::LF(t) => Some(t),
            _ => None,
        }
    }

    /// Fully decompressed `LF_s`, applying `s ↦ 1 + (s − 1)/4` once per level;
    /// defined when `depth > 0` and `t > 1`.
    pub fn alias(&self) -> Option<Q> {
        let t = self.parameter()?;
        if self.depth == 0 || *t <= q(1) {
            return None;
        }
        Some((0..self.depth).fold(t.clone(), |s, _| compress(&s)))
    }

    /// Re-expands `LF_s` at the given depth.
    pub fn from_alias(s: &Q, depth: u32) -> NormalForm {
        let t = (0..depth).fold(s.clone(), |t, _| expand(&t));
        NormalForm { depth, core: Core::LF(t) }
    }

    pub fn to_expr(&self) -> Expr {
        let core = match &self.core {
            Core::C => Expr::C,
            Core::R => Expr::R,
            Core::LF(t) => Expr::LF(t.clone()),
        };
        Expr::mat_pow(core, self.depth)
    }

    pub fn fdim(&self) -> Q {
        self.to_expr().fdim()
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr())
    }
}

/// `M₂(LF_t) ≅ LF_{1+(t−1)/4}`.
pub fn compress(t: &Q) -> Q {
    q(1) + (t - q(1)) / q(4)
}

/// `LF_t ≅ M₂(LF_{4(t−1)+1})`.
pub fn expand(t: &Q) -> Q {
    (t - q(1)) * q(4) + q(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    #[test]
    fn fdim_values() {
        let c2 = Expr::sum(Expr::C, Expr::C);
        assert_eq!(c2.fdim(), half());
        assert_eq!(Expr::Free(vec![c2.clone(), c2]).fdim(), q(1));
        assert_eq!(Expr::Free(vec![Expr::R, Expr::R]).fdim(), q(2));
        assert_eq!(Expr::mat(Expr::C).fdim(), qf(3, 4));
        assert_eq!(Expr::mat(Expr::LF(q(5))).fdim(), q(2));
    }

    #[test]
    fn display() {
        assert_eq!(Expr::sum_pow(Expr::C, 2).to_string(), "C^4");
        assert_eq!(Expr::mat_pow(Expr::LZ, 2).to_string(), "M4(LZ)");
        let e = Expr::Free(vec![Expr::sum(Expr::LF(q(2)), Expr::C), Expr::mat(Expr::R)]);
        assert_eq!(e.to_string(), "LF(2) (+) C * M2(R)");
    }

    #[test]
    fn alias() {
        let nf = NormalForm { depth: 2, core: Core::LF(q(2)) };
        assert_eq!(nf.alias(), Some(qf(17, 16)));
        assert_eq!(NormalForm::from_alias(&qf(17, 16), 2), nf);
        assert_eq!(NormalForm { depth: 1, core: Core::LF(q(1)) }.alias(), None);
    }
}
