use crate::error::{Error, Result};
use crate::orbit::ClassLabel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PosetRelation {
    Equal,
    Greater,
    Less,
    Incomparable,
}

impl PosetRelation {
    pub fn reverse(self) -> Self {
        match self {
            PosetRelation::Greater => PosetRelation::Less,
            PosetRelation::Less => PosetRelation::Greater,
            r => r,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PosetRelation::Equal => "equal",
            PosetRelation::Greater => "greater",
            PosetRelation::Less => "less",
            PosetRelation::Incomparable => "incomparable",
        }
    }
}

fn compare_sums(a: &[usize], b: &[usize]) -> PosetRelation {
    let (mut ge, mut le) = (true, true);
    for (x, y) in a.iter().zip(b) {
        ge &= x >= y;
        le &= x <= y;
    }
    match (ge, le) {
        (true, true) => PosetRelation::Equal,
        (true, false) => PosetRelation::Greater,
        (false, true) => PosetRelation::Less,
        (false, false) => PosetRelation::Incomparable,
    }
}

fn partial_sums(xs: impl Iterator<Item = usize>) -> Vec<usize> {
    xs.scan(0, |acc, x| {
        *acc += x;
        Some(*acc)
    })
    .collect()
}

fn m_dim(m: &[usize]) -> usize {
    m.iter().enumerate().map(|(l, &c)| (l + 1) * c).sum()
}

/// `m ≥ m'` when `Σ_{1≤i≤ℓ} m_i ≥ Σ_{1≤i≤ℓ} m'_i` for every `ℓ`, read literally
/// (the sums start at `m_1`, skipping `m_0`).
pub fn order_paper(m: &[usize], m2: &[usize]) -> Result<PosetRelation> {
    let (d1, d2) = (m_dim(m), m_dim(m2));
    if d1 != d2 {
        return Err(Error::Dimension(format!("Jordan types of dimensions {d1} and {d2}")));
    }
    let len = m.len().max(m2.len());
    let pad = |x: &[usize]| (1..len).map(|i| x.get(i).copied().unwrap_or(0)).collect::<Vec<_>>();
    let (a, b) = (pad(m), pad(m2));
    Ok(compare_sums(&partial_sums(a.into_iter()), &partial_sums(b.into_iter())))
}

/// Dominance order on partitions: `λ ≥ λ'` when every partial sum of the
/// largest parts of `λ` is at least that of `λ'`.
pub fn order_dominance(lambda: &[usize], lambda2: &[usize]) -> Result<PosetRelation> {
    let (d1, d2): (usize, usize) = (lambda.iter().sum(), lambda2.iter().sum());
    if d1 != d2 {
        return Err(Error::Dimension(format!("partitions of {d1} and {d2}")));
    }
    let sorted = |x: &[usize]| {
        let mut v: Vec<usize> = x.iter().copied().filter(|&p| p > 0).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    };
    let (mut a, mut b) = (sorted(lambda), sorted(lambda2));
    let len = a.len().max(b.len());
    a.resize(len, 0);
    b.resize(len, 0);
    Ok(compare_sums(&partial_sums(a.into_iter()), &partial_sums(b.into_iter())))
}

/// What the closure order allows between two classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosureVerdict {
    pub relation: PosetRelation,
    /// The first class may lie in the closure of the second.
    pub first_in_closure_of_second: bool,
    /// The second class may lie in the closure of the first.
    pub second_in_closure_of_first: bool,
}

impl ClosureVerdict {
    pub fn containment_possible(&self) -> bool {
        self.first_in_closure_of_second || self.second_in_closure_of_first
    }

    pub fn mutually_excluded(&self) -> bool {
        !self.containment_possible()
    }
}

/// A class in the closure of a different class has a strictly smaller
/// partition in dominance order. Equal or incomparable partitions therefore
/// exclude containment both ways.
pub fn closure_consistency(a: &ClassLabel, b: &ClassLabel) -> ClosureVerdict {
    let relation = order_dominance(&a.invariants.partition(), &b.invariants.partition())
        .unwrap_or(PosetRelation::Incomparable);
    ClosureVerdict {
        relation,
        first_in_closure_of_second: relation == PosetRelation::Less,
        second_in_closure_of_first: relation == PosetRelation::Greater,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::FormParity;
    use crate::orbit::classify_complex;

    #[test]
    fn dominance_chain() {
        let chain: [&[usize]; 5] = [&[4], &[3, 1], &[2, 2], &[2, 1, 1], &[1, 1, 1, 1]];
        for w in chain.windows(2) {
            assert_eq!(order_dominance(w[0], w[1]).unwrap(), PosetRelation::Greater);
            assert_eq!(order_dominance(w[1], w[0]).unwrap(), PosetRelation::Less);
        }
        assert_eq!(order_dominance(&[3, 3], &[4, 1, 1]).unwrap(), PosetRelation::Incomparable);
        assert_eq!(order_dominance(&[1, 2], &[2, 1]).unwrap(), PosetRelation::Equal);
        assert!(order_dominance(&[2], &[1]).is_err());
    }

    #[test]
    fn literal_rule_on_regular_and_subregular() {
        // Partial sums from m_1: (0, 0, 1) against (0, 1, 1).
        assert_eq!(order_paper(&[0, 0, 0, 1], &[1, 0, 1, 0]).unwrap(), PosetRelation::Less);
        assert_eq!(order_paper(&[0, 1], &[0, 1, 0]).unwrap(), PosetRelation::Equal);
        assert!(order_paper(&[0, 1], &[1]).is_err());
    }

    #[test]
    fn closure_verdicts() {
        let a = classify_complex(&[0, 2], FormParity::Symmetric).unwrap();
        let parts = a.components();
        let v = closure_consistency(&parts[0], &parts[1]);
        assert!(v.mutually_excluded());
        let zero = classify_complex(&[4], FormParity::Symmetric).unwrap();
        let v = closure_consistency(&zero, &a);
        assert!(v.first_in_closure_of_second && !v.second_in_closure_of_first);
        let x = classify_complex(&[0, 0, 2], FormParity::Skew).unwrap();
        let y = classify_complex(&[2, 0, 0, 1], FormParity::Skew).unwrap();
        assert!(closure_consistency(&x, &y).mutually_excluded());
    }
}
