use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::forms::FormParity;
use crate::nilpotent::OrbitInvariants;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Real,
    Complex,
}

/// Which group acts: all of `Aut(V, Q)` or its identity component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Group {
    Full,
    IdentityComponent,
}

/// Arbitrary `±` tag for the two identity-component orbits of a split class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    Plus,
    Minus,
}

/// The case of the splitting criterion that decided a label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SplitBranch {
    /// Complex, `Q` symmetric, `m_{2ℓ} = 0` and `m_{2ℓ+1}` even: two classes.
    ComplexSplit,
    /// Complex, any other case: one class.
    ComplexUnique,
    /// Real, `Q` symmetric, `m_{2ℓ} = 0` for all `ℓ`.
    RealNoEvenStrings,
    /// Real, every nonzero `Q_{2ℓ}` is `(−1)^ℓ`-definite.
    RealDefinite,
    /// Real, every nonzero `Q_{2ℓ}` is `(−1)^{ℓ+1}`-definite.
    RealOppositeDefinite,
    /// Real, `Q` symmetric and none of the above.
    RealOtherwise,
    /// Real, `Q` skew-symmetric.
    RealSkew,
}

impl SplitBranch {
    pub fn name(self) -> &'static str {
        match self {
            SplitBranch::ComplexSplit => "complex-split",
            SplitBranch::ComplexUnique => "complex-unique",
            SplitBranch::RealNoEvenStrings => "real-no-even-strings",
            SplitBranch::RealDefinite => "real-definite",
            SplitBranch::RealOppositeDefinite => "real-opposite-definite",
            SplitBranch::RealOtherwise => "real-otherwise",
            SplitBranch::RealSkew => "real-skew",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassLabel {
    pub invariants: OrbitInvariants,
    pub field: Field,
    pub group: Group,
    /// The `Aut(V, Q)`-class decomposes into two identity-component classes.
    pub split: bool,
    pub branch: SplitBranch,
    pub component: Option<Component>,
}

impl ClassLabel {
    /// Labels of the identity-component classes making up this class.
    pub fn components(&self) -> Vec<ClassLabel> {
        let tag = |c| ClassLabel { group: Group::IdentityComponent, component: c, ..self.clone() };
        if self.split {
            vec![tag(Some(Component::Plus)), tag(Some(Component::Minus))]
        } else {
            vec![tag(None)]
        }
    }

    pub fn to_json(&self) -> Value {
        let inv = self.invariants.to_json();
        let mut out = json!({
            "m": inv["m"],
            "s": inv["s"],
            "field": match self.field { Field::Real => "real", Field::Complex => "complex" },
            "group": match self.group { Group::Full => "full", Group::IdentityComponent => "identity-component" },
            "split": self.split,
            "branch": self.branch.name(),
        });
        if let Some(c) = self.component {
            out["component"] = json!(match c {
                Component::Plus => "+",
                Component::Minus => "-",
            });
        }
        out
    }
}

/// Outcome of [`validate_invariants`]: the verdict plus one line per violated rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantCheck {
    pub valid: bool,
    pub diagnostics: Vec<String>,
}

impl InvariantCheck {
    pub fn into_result(self) -> Result<()> {
        if self.valid {
            Ok(())
        } else {
            Err(Error::InvalidInvariants(self.diagnostics))
        }
    }
}

/// Signature of `Q` carried by a class with invariants `(m, s)` when `k` is even.
///
/// With `Q(N^a v, N^{ℓ−a} w) = (−1)^a Q_ℓ(v, w)`, a string of even length
/// `ℓ + 1` splits into `ℓ/2` hyperbolic pairs plus its middle vector, of sign
/// `(−1)^{ℓ/2} Q_ℓ(v, v)`; a pair of strings of odd `ℓ` is totally hyperbolic.
pub fn global_signature(inv: &OrbitInvariants, k: usize) -> Option<(usize, usize)> {
    if k % 2 == 1 {
        return None;
    }
    let (mut p, mut q) = (0, 0);
    for (ell, &ml) in inv.m.iter().enumerate() {
        if ell % 2 == 1 {
            p += ml * (ell + 1) / 2;
            q += ml * (ell + 1) / 2;
            continue;
        }
        let (sp, sq) = inv.s.get(&ell).copied().unwrap_or((0, 0));
        p += ml * ell / 2;
        q += ml * ell / 2;
        if (ell / 2) % 2 == 0 {
            p += sp;
            q += sq;
        } else {
            p += sq;
            q += sp;
        }
    }
    Some((p, q))
}

/// Checks that `(m, s)` can be the invariants of a nilpotent in `End(V, Q)`
/// with `dim V = dim` and `Q` `(−1)^k`-symmetric. If the signature of `Q` is
/// known (symmetric case), the strings must reproduce it.
pub fn validate_invariants(
    inv: &OrbitInvariants,
    k: usize,
    dim: usize,
    q_signature: Option<(usize, usize)>,
) -> InvariantCheck {
    let mut diag = Vec::new();
    let total = inv.dim();
    if total != dim {
        diag.push(format!("sum of (l+1) m_l is {total}, expected dimension {dim}"));
    }
    let len = inv.m.len().max(k + 1);
    let m_at = |l: usize| inv.m.get(l).copied().unwrap_or(0);
    for ell in 0..len {
        let ml = m_at(ell);
        if (k + ell) % 2 == 1 {
            if ml % 2 == 1 {
                diag.push(format!("m_{ell} = {ml} must be even since k + {ell} is odd"));
            }
            if inv.s.contains_key(&ell) {
                diag.push(format!("s_{ell} given but Q_{ell} is skew (k + {ell} odd)"));
            }
        } else {
            match inv.s.get(&ell) {
                None => diag.push(format!("s_{ell} missing (k + {ell} even)")),
                Some(&(p, q)) if p + q != ml => {
                    diag.push(format!("s_{ell} = ({p}, {q}) does not add up to m_{ell} = {ml}"))
                }
                Some(_) => {}
            }
        }
    }
    if let Some(&l) = inv.s.keys().find(|&&l| l >= len) {
        diag.push(format!("s_{l} given beyond the last string length"));
    }
    if let (Some(expected), Some(found)) = (q_signature, global_signature(inv, k)) {
        if diag.is_empty() && expected != found {
            diag.push(format!(
                "strings give Q signature ({}, {}), expected ({}, {})",
                found.0, found.1, expected.0, expected.1
            ));
        }
    }
    InvariantCheck { valid: diag.is_empty(), diagnostics: diag }
}

/// Classes over ℂ are determined by `m`; a class splits under the identity
/// component exactly when `Q` is symmetric, every `m_{2ℓ}` vanishes and every
/// `m_{2ℓ+1}` is even.
pub fn classify_complex(m: &[usize], parity: FormParity) -> Result<ClassLabel> {
    let k_mod2 = match parity {
        FormParity::Symmetric => 0,
        FormParity::Skew => 1,
    };
    let bad: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(l, &c)| (k_mod2 + l) % 2 == 1 && c % 2 == 1)
        .map(|(l, c)| format!("m_{l} = {c} must be even"))
        .collect();
    if !bad.is_empty() {
        return Err(Error::InvalidInvariants(bad));
    }
    let split = parity == FormParity::Symmetric
        && m.iter().step_by(2).all(|&c| c == 0)
        && m.iter().skip(1).step_by(2).all(|&c| c % 2 == 0);
    Ok(ClassLabel {
        invariants: OrbitInvariants::new(m.to_vec(), Default::default()),
        field: Field::Complex,
        group: Group::Full,
        split,
        branch: if split { SplitBranch::ComplexSplit } else { SplitBranch::ComplexUnique },
        component: None,
    })
}

/// Real classes are determined by `(m, s)`. For symmetric `Q` a class splits
/// under the identity component when (a) all `m_{2ℓ}` vanish, or (b) some
/// `m_{2ℓ} ≠ 0` and the nonzero `Q_{2ℓ}` are all `(−1)^ℓ`-definite, or all
/// `(−1)^{ℓ+1}`-definite. Classes for skew `Q` never split.
pub fn classify_real(inv: &OrbitInvariants, k: usize) -> Result<ClassLabel> {
    validate_invariants(inv, k, inv.dim(), None).into_result()?;
    let label = |split, branch| ClassLabel {
        invariants: inv.clone(),
        field: Field::Real,
        group: Group::Full,
        split,
        branch,
        component: None,
    };
    if k % 2 == 1 {
        return Ok(label(false, SplitBranch::RealSkew));
    }
    let even: Vec<(usize, usize, (usize, usize))> = inv
        .m
        .iter()
        .enumerate()
        .filter(|&(l, &c)| l % 2 == 0 && c != 0)
        .map(|(l, &c)| (l, c, inv.s[&l]))
        .collect();
    if even.is_empty() {
        return Ok(label(true, SplitBranch::RealNoEvenStrings));
    }
    // Q_l is `sign`-definite: only positive (sign +1) or only negative (sign −1) directions.
    let definite = |(p, q): (usize, usize), sign: i64| if sign > 0 { q == 0 } else { p == 0 };
    let sign_of = |l: usize| if (l / 2).is_multiple_of(2) { 1 } else { -1 };
    if even.iter().all(|&(l, _, s)| definite(s, sign_of(l))) {
        return Ok(label(true, SplitBranch::RealDefinite));
    }
    if even.iter().all(|&(l, _, s)| definite(s, -sign_of(l))) {
        return Ok(label(true, SplitBranch::RealOppositeDefinite));
    }
    Ok(label(false, SplitBranch::RealOtherwise))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn inv(m: &[usize], s: &[(usize, (usize, usize))]) -> OrbitInvariants {
        OrbitInvariants::new(m.to_vec(), s.iter().copied().collect::<BTreeMap<_, _>>())
    }

    #[test]
    fn validation_examples() {
        assert!(validate_invariants(&inv(&[0, 1], &[(1, (1, 0))]), 1, 2, None).valid);
        assert!(validate_invariants(&inv(&[2, 0], &[(1, (0, 0))]), 1, 2, None).valid);
        for m in [[3, 0], [1, 1], [0, 0]] {
            let s = [(1, (m[1], 0))];
            assert!(!validate_invariants(&inv(&m, &s), 1, 3, None).valid);
        }
        let c = validate_invariants(&inv(&[0, 1], &[(1, (1, 1))]), 1, 2, None);
        assert!(!c.valid);
        assert_eq!(c.diagnostics.len(), 1);
        assert!(!validate_invariants(&inv(&[0, 1], &[]), 1, 2, None).valid);
    }

    #[test]
    fn global_signature_constraint() {
        // Single string of length 3 with Q_2 = (+1): Q has signature (1, 2).
        let i = inv(&[0, 0, 1], &[(0, (0, 0)), (2, (1, 0))]);
        assert_eq!(global_signature(&i, 2), Some((1, 2)));
        assert!(validate_invariants(&i, 2, 3, Some((1, 2))).valid);
        assert!(!validate_invariants(&i, 2, 3, Some((2, 1))).valid);
        assert_eq!(global_signature(&i, 1), None);
    }

    #[test]
    fn complex_truth_table() {
        let l = classify_complex(&[0, 2], FormParity::Symmetric).unwrap();
        assert!(l.split);
        assert_eq!(l.branch, SplitBranch::ComplexSplit);
        assert!(!classify_complex(&[0, 1], FormParity::Skew).unwrap().split);
        assert!(!classify_complex(&[2, 0], FormParity::Skew).unwrap().split);
        assert!(!classify_complex(&[0, 0, 1], FormParity::Symmetric).unwrap().split);
        assert!(classify_complex(&[1, 0], FormParity::Skew).is_err());
        assert_eq!(l.components().len(), 2);
    }

    #[test]
    fn real_truth_table() {
        let a = classify_real(&inv(&[0, 2, 0], &[(0, (0, 0)), (2, (0, 0))]), 2).unwrap();
        assert_eq!((a.split, a.branch), (true, SplitBranch::RealNoEvenStrings));
        let bi = classify_real(&inv(&[3, 0, 0], &[(0, (3, 0)), (2, (0, 0))]), 2).unwrap();
        assert_eq!((bi.split, bi.branch), (true, SplitBranch::RealDefinite));
        let bii = classify_real(&inv(&[3, 0, 0], &[(0, (0, 3)), (2, (0, 0))]), 2).unwrap();
        assert_eq!((bii.split, bii.branch), (true, SplitBranch::RealOppositeDefinite));
        let other = classify_real(&inv(&[3, 0, 0], &[(0, (2, 1)), (2, (0, 0))]), 2).unwrap();
        assert_eq!((other.split, other.branch), (false, SplitBranch::RealOtherwise));
        let skew = classify_real(&inv(&[0, 1], &[(1, (1, 0))]), 1).unwrap();
        assert_eq!((skew.split, skew.branch), (false, SplitBranch::RealSkew));
        assert!(classify_real(&inv(&[0, 1], &[(1, (1, 1))]), 1).is_err());
    }

    #[test]
    fn label_json() {
        let l = classify_real(&inv(&[0, 1], &[(1, (1, 0))]), 1).unwrap();
        let j = l.to_json();
        assert_eq!(j["m"], json!([0, 1]));
        assert_eq!(j["s"], json!({"1": [1, 0]}));
        assert_eq!(j["split"], json!(false));
    }
}
