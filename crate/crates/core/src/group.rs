//! Finite groups given by a Cayley table over element ids `0..order`.

use std::fmt;
use std::str::FromStr;

use crate::zn::Modulus;
use crate::{Error, Result};

/// Largest order for which a [`GroupSpec`] is built; the product DP keeps element
/// sets in a `u64` mask.
pub const MAX_ORDER: usize = 64;

pub type ElementId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    name: String,
    order: usize,
    identity: ElementId,
    table: Vec<ElementId>,
    inverses: Vec<ElementId>,
    labels: Vec<String>,
    abelian: bool,
}

impl GroupSpec {
    /// Builds a group from a row-major multiplication table, checking closure,
    /// identity, inverses and associativity.
    pub fn from_table(
        name: impl Into<String>,
        identity: ElementId,
        table: Vec<ElementId>,
        labels: Vec<String>,
    ) -> Result<Self> {
        let order = labels.len();
        if order == 0 || order > MAX_ORDER {
            return Err(Error::Budget(format!(
                "group order {order} outside [1, {MAX_ORDER}]"
            )));
        }
        if table.len() != order * order {
            return Err(Error::domain(format!(
                "table has {} entries, expected {}",
                table.len(),
                order * order
            )));
        }
        if identity >= order || table.iter().any(|&e| e >= order) {
            return Err(Error::domain("table entry outside the element range"));
        }
        let mul = |a: usize, b: usize| table[a * order + b];
        for a in 0..order {
            if mul(identity, a) != a || mul(a, identity) != a {
                return Err(Error::domain(format!(
                    "{} is not a two-sided identity",
                    labels[identity]
                )));
            }
        }
        let mut inverses = Vec::with_capacity(order);
        #[allow(clippy::needless_range_loop)]
        for a in 0..order {
            let inv = (0..order)
                .find(|&b| mul(a, b) == identity && mul(b, a) == identity)
                .ok_or_else(|| Error::domain(format!("{} has no inverse", labels[a])))?;
            inverses.push(inv);
        }
        for a in 0..order {
            for b in 0..order {
                let ab = mul(a, b);
                for c in 0..order {
                    if mul(ab, c) != mul(a, mul(b, c)) {
                        return Err(Error::domain(format!(
                            "associativity fails on ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        let abelian = (0..order).all(|a| (0..order).all(|b| mul(a, b) == mul(b, a)));
        Ok(GroupSpec {
            name: name.into(),
            order,
            identity,
            table,
            inverses,
            labels,
            abelian,
        })
    }

    /// `Z_n`; element id `a` is the residue `a`.
    pub fn cyclic(n: u32) -> Result<Self> {
        Self::direct_sum(&[n]).map(|mut g| {
            g.name = format!("cyclic:{n}");
            g
        })
    }

    /// `Z_{n_1} ⊕ ... ⊕ Z_{n_r}`; ids are mixed-radix with the first factor most significant.
    pub fn direct_sum(ns: &[u32]) -> Result<Self> {
        if ns.is_empty() {
            return Err(Error::domain("direct sum needs at least one factor"));
        }
        if let Some(&bad) = ns.iter().find(|&&n| n < 2) {
            return Err(Error::domain(format!(
                "cyclic factor must have order >= 2, got {bad}"
            )));
        }
        let order = ns
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n as usize))
            .filter(|&o| o <= MAX_ORDER)
            .ok_or_else(|| Error::Budget(format!("direct sum {ns:?} exceeds order {MAX_ORDER}")))?;
        let digits = |mut id: usize| {
            let mut d = vec![0usize; ns.len()];
            for (slot, &n) in d.iter_mut().zip(ns).rev() {
                *slot = id % n as usize;
                id /= n as usize;
            }
            d
        };
        let compose = |d: &[usize]| {
            d.iter()
                .zip(ns)
                .fold(0, |acc, (&x, &n)| acc * n as usize + x)
        };
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            let da = digits(a);
            for b in 0..order {
                let db = digits(b);
                let sum: Vec<usize> = da
                    .iter()
                    .zip(&db)
                    .zip(ns)
                    .map(|((&x, &y), &n)| (x + y) % n as usize)
                    .collect();
                table.push(compose(&sum));
            }
        }
        let labels = (0..order)
            .map(|id| {
                let d = digits(id);
                if d.len() == 1 {
                    d[0].to_string()
                } else {
                    let parts: Vec<String> = d.iter().map(|x| x.to_string()).collect();
                    format!("({})", parts.join(","))
                }
            })
            .collect();
        let name = format!(
            "sum:{}",
            ns.iter()
                .map(|n| n.to_string())
                .collect::<Vec<_>>()
                .join("x")
        );
        Self::from_table(name, 0, table, labels)
    }

    /// `D_2n`: id `a` is `y^a` and id `n + a` is `x y^a`, labelled `r<a>` and `s<a>`.
    pub fn dihedral(n: u32) -> Result<Self> {
        if n < 3 {
            return Err(Error::domain(format!(
                "dihedral group needs n >= 3, got {n}"
            )));
        }
        let nn = n as usize;
        if 2 * nn > MAX_ORDER {
            return Err(Error::Budget(format!(
                "D_{} exceeds order {MAX_ORDER}",
                2 * nn
            )));
        }
        let m = Modulus::new(n)?;
        let elems: Vec<crate::dihedral::DihedralElement> = (0..2 * nn)
            .map(|id| crate::dihedral::DihedralElement::new(id >= nn, (id % nn) as i64, m))
            .collect();
        let id_of = |e: crate::dihedral::DihedralElement| {
            e.rotation() as usize + if e.is_reflection() { nn } else { 0 }
        };
        let mut table = Vec::with_capacity(4 * nn * nn);
        for &u in &elems {
            for &v in &elems {
                table.push(id_of(u.mul_same(v)));
            }
        }
        let labels = elems.iter().map(|e| e.to_string()).collect();
        Self::from_table(format!("dihedral:{n}"), 0, table, labels)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> ElementId {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inverse(&self, a: ElementId) -> ElementId {
        self.inverses[a]
    }

    pub fn label(&self, a: ElementId) -> &str {
        &self.labels[a]
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    /// Left-to-right product of a list of ids; the identity for an empty list.
    pub fn product(&self, terms: &[ElementId]) -> ElementId {
        terms.iter().fold(self.identity, |acc, &t| self.mul(acc, t))
    }

    /// `{p · g : p ∈ set}` for a set given as a bit mask.
    #[inline]
    pub fn right_mul_mask(&self, set: u64, g: ElementId) -> u64 {
        let mut out = 0u64;
        let mut rest = set;
        while rest != 0 {
            let p = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out |= 1 << self.mul(p, g);
        }
        out
    }

    pub fn format_multiset(&self, terms: &[ElementId]) -> String {
        let parts: Vec<&str> = terms.iter().map(|&t| self.label(t)).collect();
        parts.join(",")
    }
}

/// Parses `cyclic:<n>`, `sum:<n1>x<n2>[x...]` or `dihedral:<n>`.
impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, arg) = s
            .split_once(':')
            .ok_or_else(|| Error::parse(s, "expected `<kind>:<params>`"))?;
        let int = |t: &str| -> Result<u32> {
            t.trim()
                .parse()
                .map_err(|_| Error::parse(t, "expected a positive integer"))
        };
        match kind.trim() {
            "cyclic" => GroupSpec::cyclic(int(arg)?),
            "dihedral" => GroupSpec::dihedral(int(arg)?),
            "sum" => {
                let ns = arg.split('x').map(int).collect::<Result<Vec<_>>>()?;
                GroupSpec::direct_sum(&ns)
            }
            other => Err(Error::parse(
                other,
                "unknown group kind (cyclic, sum, dihedral)",
            )),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}
