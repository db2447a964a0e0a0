//! Group backends with decidable equality: finite multiplication tables and
//! the integers.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    /// Index into a finite multiplication table.
    Table(u32),
    Int(BigInt),
}

impl GroupElement {
    pub fn int(n: i64) -> Self {
        GroupElement::Int(BigInt::from(n))
    }

    pub fn table_index(&self) -> Option<usize> {
        match self {
            GroupElement::Table(i) => Some(*i as usize),
            GroupElement::Int(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<Vec<u32>>,
    inverse: Vec<u32>,
    identity: u32,
}

impl FiniteGroup {
    /// Checks the group axioms exhaustively and returns every violation.
    pub fn new(
        names: Vec<String>,
        table: Vec<Vec<u32>>,
        inverse: Vec<u32>,
        identity: u32,
    ) -> Result<Self, Vec<String>> {
        let n = names.len();
        let mut problems = Vec::new();
        if n == 0 {
            problems.push("group has no elements".to_string());
            return Err(problems);
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            problems.push(format!("multiplication table is not {n}x{n}"));
            return Err(problems);
        }
        if inverse.len() != n {
            problems.push(format!("inverse table has {} entries, expected {n}", inverse.len()));
            return Err(problems);
        }
        if identity as usize >= n
            || table.iter().flatten().any(|&v| v as usize >= n)
            || inverse.iter().any(|&v| v as usize >= n)
        {
            problems.push("table entry out of range".to_string());
            return Err(problems);
        }
        let mut seen = std::collections::HashSet::new();
        for name in &names {
            if !seen.insert(name) {
                problems.push(format!("duplicate element name `{name}`"));
            }
        }
        let e = identity as usize;
        for a in 0..n {
            if table[e][a] as usize != a || table[a][e] as usize != a {
                problems.push(format!("identity law fails at `{}`", names[a]));
            }
            let ai = inverse[a] as usize;
            if table[a][ai] as usize != e || table[ai][a] as usize != e {
                problems.push(format!("inverse law fails at `{}`", names[a]));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b] as usize;
                for c in 0..n {
                    let bc = table[b][c] as usize;
                    if table[ab][c] != table[a][bc] {
                        problems.push(format!(
                            "associativity fails at ({}, {}, {})",
                            names[a], names[b], names[c]
                        ));
                    }
                }
            }
        }
        if problems.is_empty() {
            Ok(FiniteGroup { names, table, inverse, identity })
        } else {
            Err(problems)
        }
    }

    /// The cyclic group of order `n`, elements named `1`, `g`, `g2`, ….
    pub fn cyclic(n: usize) -> Self {
        let names = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "g".to_string(),
                k => format!("g{k}"),
            })
            .collect();
        let table = (0..n)
            .map(|a| (0..n).map(|b| ((a + b) % n) as u32).collect())
            .collect();
        let inverse = (0..n).map(|a| ((n - a) % n) as u32).collect();
        FiniteGroup::new(names, table, inverse, 0).expect("cyclic group")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> &[Vec<u32>] {
        &self.table
    }

    pub fn inverse_table(&self) -> &[u32] {
        &self.inverse
    }

    pub fn identity_index(&self) -> u32 {
        self.identity
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Group {
    Finite(FiniteGroup),
    Integers,
}

impl Group {
    pub fn trivial() -> Self {
        Group::Finite(FiniteGroup::cyclic(1))
    }

    /// Both built-in backends are amenable.
    pub fn amenable(&self) -> bool {
        true
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Group::Finite(_))
    }

    pub fn order(&self) -> Option<usize> {
        match self {
            Group::Finite(g) => Some(g.len()),
            Group::Integers => None,
        }
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            Group::Finite(g) => GroupElement::Table(g.identity),
            Group::Integers => GroupElement::Int(BigInt::zero()),
        }
    }

    pub fn is_identity(&self, a: &GroupElement) -> bool {
        match (self, a) {
            (Group::Finite(g), GroupElement::Table(i)) => *i == g.identity,
            (Group::Integers, GroupElement::Int(n)) => n.is_zero(),
            _ => false,
        }
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        match (self, a, b) {
            (Group::Finite(g), GroupElement::Table(x), GroupElement::Table(y)) => {
                GroupElement::Table(g.table[*x as usize][*y as usize])
            }
            (Group::Integers, GroupElement::Int(x), GroupElement::Int(y)) => GroupElement::Int(x + y),
            _ => panic!("group element from a different backend"),
        }
    }

    pub fn inv(&self, a: &GroupElement) -> GroupElement {
        match (self, a) {
            (Group::Finite(g), GroupElement::Table(x)) => GroupElement::Table(g.inverse[*x as usize]),
            (Group::Integers, GroupElement::Int(x)) => GroupElement::Int(-x),
            _ => panic!("group element from a different backend"),
        }
    }

    pub fn contains(&self, a: &GroupElement) -> bool {
        match (self, a) {
            (Group::Finite(g), GroupElement::Table(x)) => (*x as usize) < g.len(),
            (Group::Integers, GroupElement::Int(_)) => true,
            _ => false,
        }
    }

    /// All elements of a finite group in table order.
    pub fn elements(&self) -> Option<Vec<GroupElement>> {
        match self {
            Group::Finite(g) => Some((0..g.len() as u32).map(GroupElement::Table).collect()),
            Group::Integers => None,
        }
    }

    /// Elements of word length at most `radius` over the standard generators;
    /// for a finite group this is the whole group.
    pub fn ball(&self, radius: usize) -> Vec<GroupElement> {
        match self {
            Group::Finite(_) => self.elements().expect("finite"),
            Group::Integers => {
                let r = radius as i64;
                let mut out = vec![GroupElement::int(0)];
                for k in 1..=r {
                    out.push(GroupElement::int(k));
                    out.push(GroupElement::int(-k));
                }
                out
            }
        }
    }

    /// Nonnegative representative ordering used for canonical choices.
    pub fn canonical_key(&self, a: &GroupElement) -> (u8, BigInt) {
        match a {
            GroupElement::Table(i) => (0, BigInt::from(*i)),
            GroupElement::Int(n) => (if n.is_negative() { 1 } else { 0 }, n.abs()),
        }
    }

    pub fn name(&self, a: &GroupElement) -> String {
        match (self, a) {
            (Group::Finite(g), GroupElement::Table(i)) => g.names[*i as usize].clone(),
            (_, GroupElement::Int(n)) => n.to_string(),
            (Group::Integers, GroupElement::Table(i)) => format!("#{i}"),
        }
    }

    pub fn parse(&self, text: &str) -> Option<GroupElement> {
        let text = text.trim();
        match self {
            Group::Finite(g) => g
                .names
                .iter()
                .position(|n| n == text)
                .map(|i| GroupElement::Table(i as u32)),
            Group::Integers => text.parse::<BigInt>().ok().map(GroupElement::Int),
        }
    }

    /// `a^k` for `k ≥ 0`.
    pub fn pow(&self, a: &GroupElement, k: u64) -> GroupElement {
        match a {
            GroupElement::Int(n) => GroupElement::Int(n * BigInt::from(k)),
            GroupElement::Table(_) => {
                let mut acc = self.identity();
                for _ in 0..k {
                    acc = self.mul(&acc, a);
                }
                acc
            }
        }
    }

    pub fn one_int() -> GroupElement {
        GroupElement::Int(BigInt::one())
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Table(i) => write!(f, "#{i}"),
            GroupElement::Int(n) => write!(f, "{n}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_group_axioms() {
        let g = Group::Finite(FiniteGroup::cyclic(4));
        let els = g.elements().unwrap();
        for a in &els {
            assert_eq!(g.mul(a, &g.inv(a)), g.identity());
        }
        assert_eq!(g.name(&els[3]), "g3");
        assert_eq!(g.parse("g"), Some(GroupElement::Table(1)));
    }

    #[test]
    fn broken_table_is_reported() {
        let names = vec!["1".into(), "s".into()];
        let table = vec![vec![0, 1], vec![1, 1]];
        let err = FiniteGroup::new(names, table, vec![0, 1], 0).unwrap_err();
        assert!(err.iter().any(|p| p.contains("inverse")));
    }

    #[test]
    fn integers_backend() {
        let z = Group::Integers;
        let a = GroupElement::int(5);
        assert_eq!(z.mul(&a, &z.inv(&a)), z.identity());
        assert_eq!(z.ball(2).len(), 5);
        assert_eq!(z.parse("-12"), Some(GroupElement::int(-12)));
    }
}
