//! Classical reference checks: quasiorders on a semigroup, the division
//! relation and the classical characterizations of positive quasiorders.
//! These read `ρ` without reference to the apartness and serve as a
//! cross-check at tight apartness.

use crate::bits::BitMatrix;
use crate::relation::{reflexive, transitive, BinaryRelation};
use crate::subset::Subset;
use crate::verdict::{pairs, quads, triples, Verdict};

use super::subsets::classify_mask;
use super::SemigroupTable;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalReport {
    pub reflexive: Verdict,
    pub transitive: Verdict,
    /// `(a,ab), (a,ba) ∈ ρ`, witness `(a,b)`
    pub positive: Verdict,
    /// `(a,c), (b,c) ∈ ρ ⇒ (ab,c) ∈ ρ`, witness `(a,b,c)`
    pub cm: Verdict,
    /// `(x,y), (u,v) ∈ ρ ⇒ (xu,yv) ∈ ρ`, witness `(x,y,u,v)`
    pub compatible: Verdict,
    /// (i) positive, (ii) `(ab)ρ ⊆ aρ ∩ bρ`, (iii) `ρa ∪ ρb ⊆ ρ(ab)`,
    /// (iv) every `aρ` an ideal, (v) every `ρa` convex
    pub positive_conditions: [Verdict; 5],
    /// (i) positive with cm, (ii) every `ρa` a convex subsemigroup,
    /// (iii) `(ab)ρ = aρ ∩ bρ`
    pub cm_conditions: [Verdict; 3],
    /// Both groups agree, or `ρ` is not a quasiorder.
    pub consistent: bool,
}

impl ClassicalReport {
    pub fn quasiorder(&self) -> bool {
        self.reflexive.holds && self.transitive.holds
    }
}

fn all_agree(vs: &[Verdict]) -> bool {
    vs.iter().all(|v| v.holds == vs[0].holds)
}

pub fn classical_oracle(sg: &SemigroupTable, rho: &BinaryRelation) -> ClassicalReport {
    classical_matrix(sg, rho.matrix())
}

pub(crate) fn classical_matrix(sg: &SemigroupTable, r: &BitMatrix) -> ClassicalReport {
    let n = sg.len();
    let cols = r.transpose();
    let left = |a: usize| r.row(a);
    let right = |a: usize| cols.row(a);

    let positive = Verdict::from_violation(
        pairs(n).find(|&[a, b]| !r.get(a, sg.mul(a, b)) || !r.get(a, sg.mul(b, a))),
    );
    let cm = Verdict::from_violation(
        triples(n).find(|&[a, b, c]| r.get(a, c) && r.get(b, c) && !r.get(sg.mul(a, b), c)),
    );
    let compatible = Verdict::from_violation(quads(n).find(|&[x, y, u, v]| {
        r.get(x, y) && r.get(u, v) && !r.get(sg.mul(x, u), sg.mul(y, v))
    }));

    let positive_conditions = [
        positive.clone(),
        Verdict::from_violation(
            pairs(n).find(|&[a, b]| left(sg.mul(a, b)) & !(left(a) & left(b)) != 0),
        ),
        Verdict::from_violation(
            pairs(n).find(|&[a, b]| (right(a) | right(b)) & !right(sg.mul(a, b)) != 0),
        ),
        Verdict::from_violation((0..n).find(|&a| !classify_mask(sg, left(a)).ideal.holds).map(|a| [a])),
        Verdict::from_violation((0..n).find(|&a| !classify_mask(sg, right(a)).convex.holds).map(|a| [a])),
    ];
    let both = if !positive.holds { positive.clone() } else { cm.clone() };
    let cm_conditions = [
        both,
        Verdict::from_violation(
            (0..n)
                .find(|&a| {
                    let k = classify_mask(sg, right(a));
                    !(k.convex.holds && k.subsemigroup.holds)
                })
                .map(|a| [a]),
        ),
        Verdict::from_violation(
            pairs(n).find(|&[a, b]| left(sg.mul(a, b)) != left(a) & left(b)),
        ),
    ];
    let reflexive = reflexive(r);
    let transitive = transitive(r);
    let quasi = reflexive.holds && transitive.holds;
    ClassicalReport {
        consistent: !quasi || (all_agree(&positive_conditions) && all_agree(&cm_conditions)),
        reflexive,
        transitive,
        positive,
        cm,
        compatible,
        positive_conditions,
        cm_conditions,
    }
}

/// `a | b ⇔ ∃x,y ∈ S¹, b = xay`, up to equality.
pub fn division_relation(sg: &SemigroupTable) -> BinaryRelation {
    let n = sg.len();
    let c = sg.carrier();
    let mut m = BitMatrix::empty(n);
    for a in 0..n {
        let mut reach = 1u64 << a;
        for x in 0..n {
            reach |= 1 << sg.mul(x, a);
            reach |= 1 << sg.mul(a, x);
            for y in 0..n {
                reach |= 1 << sg.mul(sg.mul(x, a), y);
            }
        }
        m.set_row(a, c.close_mask(reach));
    }
    BinaryRelation::new(c.clone(), m).expect("dimensions agree")
}

/// For an ideal `I`: completely isolated ⇔ `S∖I` is a subsemigroup or
/// empty. For a nonempty `F`: `F` is a convex subsemigroup ⇔ `S∖F` is a
/// completely isolated ideal or empty. `None` where the hypothesis on the
/// subset does not apply; otherwise whether both sides agree.
///
/// The second statement needs `F` to be a subsemigroup: in the three
/// element semilattice, `{a,b}` is convex while `{c}` is not completely
/// isolated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalLemmaReport {
    pub ideal_part: Option<bool>,
    pub convex_part: Option<bool>,
}

impl ClassicalLemmaReport {
    pub fn consistent(&self) -> bool {
        self.ideal_part != Some(false) && self.convex_part != Some(false)
    }
}

pub fn classical_lemma_check(sg: &SemigroupTable, t: &Subset) -> ClassicalLemmaReport {
    classical_lemma_mask(sg, t.mask())
}

pub(crate) fn classical_lemma_mask(sg: &SemigroupTable, t: u64) -> ClassicalLemmaReport {
    let rest = sg.carrier().all() & !t;
    let k = classify_mask(sg, t);
    let kr = classify_mask(sg, rest);
    let ideal_part = k.ideal.holds.then_some({
        k.completely_isolated.holds == (rest == 0 || kr.subsemigroup.holds)
    });
    let convex_part = (t != 0).then(|| {
        let lhs = k.convex.holds && k.subsemigroup.holds;
        let rhs = rest == 0 || (kr.ideal.holds && kr.completely_isolated.holds);
        lhs == rhs
    });
    ClassicalLemmaReport {
        ideal_part,
        convex_part,
    }
}

/// All positive quasiorders on `sg`, by brute force over every relation
/// that contains the equality. Only for `n ≤ 4`.
pub(crate) fn positive_quasiorders(sg: &SemigroupTable) -> Vec<BitMatrix> {
    let n = sg.len();
    assert!(n * n <= 16, "positive quasiorder enumeration is limited to n ≤ 4");
    let c = sg.carrier();
    let eq = c.equality().to_flat();
    let free = !eq & ((1u64 << (n * n)) - 1);
    let mut out = Vec::new();
    let mut sub = 0u64;
    loop {
        let m = BitMatrix::from_flat(n, eq | sub);
        if c.is_closed_matrix(&m) {
            let rep = classical_matrix(sg, &m);
            if rep.quasiorder() && rep.positive.holds {
                out.push(m);
            }
        }
        sub = sub.wrapping_sub(free) & free;
        if sub == 0 {
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn sl3_division_relation() {
        let sg = fixtures::sl3();
        let d = division_relation(&sg);
        let expected = BinaryRelation::from_names(
            sg.carrier().clone(),
            &[("a", "a"), ("a", "c"), ("b", "b"), ("b", "c"), ("c", "c")],
        )
        .unwrap();
        assert_eq!(d, expected);
        let r = classical_oracle(&sg, &d);
        assert!(r.quasiorder() && r.positive.holds && r.cm.holds && r.consistent);
        for a in 0..3 {
            let k = classify_mask(&sg, d.right_class(a).mask());
            assert!(k.convex.holds && k.subsemigroup.holds);
        }
    }

    #[test]
    fn equality_is_not_positive_on_sl3() {
        let sg = fixtures::sl3();
        let r = classical_oracle(&sg, &BinaryRelation::equality(sg.carrier().clone()));
        assert!(r.quasiorder());
        assert_eq!(r.positive.render_witness(sg.carrier()).unwrap(), "(a,b)");
        assert!(r.consistent);
    }

    #[test]
    fn division_is_least_positive_quasiorder() {
        let sg = fixtures::sl3();
        let d = division_relation(&sg);
        let all = positive_quasiorders(&sg);
        assert!(all.contains(d.matrix()));
        assert!(all.iter().all(|m| d.matrix().is_subset_of(m)));
    }

    #[test]
    fn literal_convex_reading_fails_on_sl3() {
        let sg = fixtures::sl3();
        let f = Subset::from_names(sg.carrier().clone(), &["a", "b"]).unwrap();
        let k = sg.classify_subset(&f).unwrap();
        assert!(k.convex.holds && !k.subsemigroup.holds);
        let rest = sg.classify_subset(&f.logical_complement()).unwrap();
        assert!(!rest.completely_isolated.holds);
        assert!(classical_lemma_check(&sg, &f).consistent());
    }
}
