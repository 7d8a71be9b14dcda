//! Left regular representation of a semigroup with apartness on `S¹`.
//!
//! Self-maps of `S¹` are compared pointwise: `f = g` iff `f(x) = g(x)` for
//! every `x`, and `f # g` iff `f(x) # g(x)` for some `x`. Each `a ∈ S` is
//! sent to its left translation `λ_a(x) = ax`.

use crate::apartness::ApartnessRelation;
use crate::bits::BitMatrix;
use crate::carrier::Carrier;
use crate::error::{Error, Result};
use crate::morphism::{analyze_mapping, Mapping};
use crate::semigroup::{AdjoinedIdentity, SemigroupTable};
use crate::verdict::{pairs, Verdict};

/// Largest `|S¹|^|S¹|` for which the whole space of strongly extensional
/// self-maps is materialized and checked.
pub const FUNCTION_SPACE_LIMIT: usize = 256;

/// How two translations compare pointwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pointwise {
    Equal,
    Apart,
    /// neither equal nor apart
    Neither,
}

impl Pointwise {
    pub fn as_str(self) -> &'static str {
        match self {
            Pointwise::Equal => "equal",
            Pointwise::Apart => "apart",
            Pointwise::Neither => "neither",
        }
    }
}

/// Axiom checks on the full space of se self-maps of `S¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionSpaceReport {
    pub maps: usize,
    pub checks: Vec<(String, bool)>,
}

#[derive(Debug, Clone)]
pub struct CayleyEmbedding {
    pub adjoined: AdjoinedIdentity,
    /// The translations `λ_a` with pointwise equality and apartness and
    /// composition as multiplication. Element `i` is `λ_i`.
    pub image: SemigroupTable,
    pub embedding: Mapping,
    /// `λ_a` as a graph on `S¹`.
    pub translations: Vec<Vec<usize>>,
    pub comparison: Vec<(usize, usize, Pointwise)>,
    pub function_space: Option<FunctionSpaceReport>,
    pub checks: Vec<(String, Verdict)>,
}

impl CayleyEmbedding {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|(_, v)| v.holds)
            && self
                .function_space
                .as_ref()
                .is_none_or(|f| f.checks.iter().all(|(_, b)| *b))
    }
}

fn pointwise(ap: &ApartnessRelation, f: &[usize], g: &[usize]) -> Pointwise {
    let c = ap.carrier();
    if f.iter().zip(g).any(|(&x, &y)| ap.apart(x, y)) {
        Pointwise::Apart
    } else if f.iter().zip(g).all(|(&x, &y)| c.equal(x, y)) {
        Pointwise::Equal
    } else {
        Pointwise::Neither
    }
}

fn is_se(ap: &ApartnessRelation, f: &[usize]) -> bool {
    let m = f.len();
    pairs(m).all(|[x, y]| !ap.apart(f[x], f[y]) || ap.apart(x, y))
}

fn is_extensional(ap: &ApartnessRelation, f: &[usize]) -> bool {
    let c = ap.carrier();
    pairs(f.len()).all(|[x, y]| !c.equal(x, y) || c.equal(f[x], f[y]))
}

pub fn cayley_embedding(sg: &SemigroupTable) -> Result<CayleyEmbedding> {
    let n = sg.len();
    let adjoined = sg.with_identity()?;
    let s1 = &adjoined.extended;
    let ap1 = s1.apartness();
    let m = s1.len();
    let translations: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..m).map(|x| s1.mul(a, x)).collect())
        .collect();

    let mut checks = Vec::new();
    checks.push((
        "translations strongly extensional".to_string(),
        Verdict::from_violation((0..n).find(|&a| !is_se(ap1, &translations[a])).map(|a| [a])),
    ));

    let base = sg.carrier();
    let names: Vec<String> = (0..n).map(|a| format!("L_{}", base.name(a))).collect();
    let mut eq = BitMatrix::empty(n);
    let mut ap = BitMatrix::empty(n);
    let mut comparison = Vec::new();
    for [a, b] in pairs(n) {
        let p = pointwise(ap1, &translations[a], &translations[b]);
        eq.set(a, b, p == Pointwise::Equal);
        ap.set(a, b, p == Pointwise::Apart);
        if a < b {
            comparison.push((a, b, p));
        }
    }
    let carrier = Carrier::new(names, eq)?;
    let image_ap = ApartnessRelation::new(carrier, ap)?;
    // λ_a ∘ λ_b = λ_{ab}
    let composition = Verdict::from_violation(pairs(n).find(|&[a, b]| {
        let ab = sg.mul(a, b);
        (0..m).any(|x| !ap1.carrier().equal(s1.mul(a, s1.mul(b, x)), translations[ab][x]))
    }));
    checks.push(("composition of translations".into(), composition));
    let image = SemigroupTable::new(image_ap.clone(), sg.entries().to_vec())?;
    let embedding = Mapping::new(sg.apartness().clone(), image_ap, (0..n).collect())?;
    let ea = analyze_mapping(&embedding);
    checks.push(("embedding homomorphism".into(), embedding.homomorphism(sg, &image)?));
    checks.push(("embedding one-one".into(), ea.one_one.clone()));
    checks.push(("embedding strongly extensional".into(), ea.strongly_extensional.clone()));

    let function_space = if m.checked_pow(m as u32).is_some_and(|s| s <= FUNCTION_SPACE_LIMIT) {
        Some(function_space(ap1, &translations))
    } else {
        None
    };

    Ok(CayleyEmbedding {
        adjoined,
        image,
        embedding,
        translations,
        comparison,
        function_space,
        checks,
    })
}

/// Materializes every extensional, strongly extensional self-map of the
/// carrier and checks Ap1 to Ap3 for the pointwise structure, closure under
/// composition, and that the given maps are members.
fn function_space(ap: &ApartnessRelation, members: &[Vec<usize>]) -> FunctionSpaceReport {
    let m = ap.len();
    let total = m.pow(m as u32);
    let maps: Vec<Vec<usize>> = (0..total)
        .map(|mut code| {
            (0..m)
                .map(|_| {
                    let v = code % m;
                    code /= m;
                    v
                })
                .collect()
        })
        .filter(|f: &Vec<usize>| is_extensional(ap, f) && is_se(ap, f))
        .collect();
    let k = maps.len();
    let cmp: Vec<Vec<Pointwise>> = maps
        .iter()
        .map(|f| maps.iter().map(|g| pointwise(ap, f, g)).collect())
        .collect();
    let apart = |i: usize, j: usize| cmp[i][j] == Pointwise::Apart;
    let irreflexive = (0..k).all(|i| (0..k).all(|j| cmp[i][j] != Pointwise::Equal || !apart(i, j)));
    let symmetric = (0..k).all(|i| (0..k).all(|j| apart(i, j) == apart(j, i)));
    let cotransitive = (0..k).all(|i| {
        (0..k).all(|j| !apart(i, j) || (0..k).all(|h| apart(i, h) || apart(h, j)))
    });
    let find = |f: &[usize]| maps.iter().any(|g| pointwise(ap, f, g) == Pointwise::Equal);
    let closed = maps.iter().all(|f| {
        maps.iter().all(|g| {
            let fg: Vec<usize> = (0..m).map(|x| f[g[x]]).collect();
            find(&fg)
        })
    });
    let contains = members.iter().all(|f| find(f));
    FunctionSpaceReport {
        maps: k,
        checks: vec![
            ("function space Ap1".into(), irreflexive),
            ("function space Ap2".into(), symmetric),
            ("function space Ap3".into(), cotransitive),
            ("function space closed under composition".into(), closed),
            ("translations in function space".into(), contains),
        ],
    }
}

impl CayleyEmbedding {
    /// Error-returning view of [`CayleyEmbedding::holds`], naming the first
    /// failed check.
    pub fn require(&self) -> Result<()> {
        if let Some((name, v)) = self.checks.iter().find(|(_, v)| !v.holds) {
            return Err(Error::precondition(
                name.clone(),
                v.render_witness(self.embedding.dom().carrier()).unwrap_or_default(),
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn sl3_embeds() {
        let sg = fixtures::sl3();
        let e = cayley_embedding(&sg).unwrap();
        assert!(e.holds(), "{:?} {:?}", e.checks, e.function_space);
        assert_eq!(e.adjoined.extended.len(), 4);
        assert_eq!(e.image.carrier().names(), ["L_a", "L_b", "L_c"]);
        assert!(e.function_space.is_some());
    }

    #[test]
    fn trivial_semigroup_embeds() {
        let c = Carrier::discrete(["e"]).unwrap();
        let sg = SemigroupTable::new(ApartnessRelation::tight_on(c), vec![0]).unwrap();
        let e = cayley_embedding(&sg).unwrap();
        assert!(e.holds());
        let fs = e.function_space.unwrap();
        // identity, swap and the two constants on {e, 1}
        assert_eq!(fs.maps, 4);
    }

    #[test]
    fn sg5_a_and_b_are_neither_equal_nor_apart() {
        let sg = fixtures::sg5();
        let e = cayley_embedding(&sg).unwrap();
        assert!(e.holds());
        assert!(e.function_space.is_none());
        assert_eq!(e.comparison[0], (0, 1, Pointwise::Neither));
        assert_eq!(e.translations[0][5], 0);
        assert_eq!(e.translations[1][5], 1);
    }
}
