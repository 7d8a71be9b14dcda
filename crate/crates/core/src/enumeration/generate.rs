//! Exhaustive generators. Matrices are ordered by their flat bit pattern
//! (bit `x * n + y` is the pair `(x,y)`), read as an unsigned integer;
//! tables are ordered lexicographically by their row-major entries.

use std::sync::Arc;

use crate::apartness::ApartnessRelation;
use crate::bits::{full_mask, has, BitMatrix};
use crate::carrier::Carrier;
use crate::semigroup::{validate_semigroup, SemigroupTable};

/// Largest `n` for which relations fit the flat `u64` encoding.
pub const FLAT_LIMIT: usize = 8;

/// Element names `a, b, c, ...`.
pub fn letters(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("x{i}")
            }
        })
        .collect()
}

/// Every equivalence relation on `n` points, in flat bit order.
pub fn equivalences(n: usize) -> Vec<BitMatrix> {
    assert!(n <= FLAT_LIMIT);
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    fn rec(i: usize, max: usize, labels: &mut [usize], out: &mut Vec<BitMatrix>) {
        let n = labels.len();
        if i == n {
            let mut m = BitMatrix::empty(n);
            for x in 0..n {
                for y in 0..n {
                    m.set(x, y, labels[x] == labels[y]);
                }
            }
            out.push(m);
            return;
        }
        for l in 0..=max {
            labels[i] = l;
            rec(i + 1, if l == max { max + 1 } else { max }, labels, out);
        }
    }
    if n == 0 {
        return out;
    }
    rec(0, 0, &mut labels, &mut out);
    out.sort_by_key(BitMatrix::to_flat);
    out
}

/// Every carrier on `a, b, ...` with `n` elements, one per equality, in flat
/// bit order of the equality.
pub fn carriers(n: usize) -> Vec<Arc<Carrier>> {
    equivalences(n)
        .into_iter()
        .map(|e| Carrier::new(letters(n), e).expect("equivalence"))
        .collect()
}

/// Every apartness on `carrier`, in flat bit order. An apartness is the
/// complement of an equivalence containing the equality.
pub fn apartnesses(carrier: &Arc<Carrier>) -> Vec<ApartnessRelation> {
    let n = carrier.len();
    let eq = carrier.equality();
    let mut ms: Vec<BitMatrix> = equivalences(n)
        .into_iter()
        .filter(|e| eq.is_subset_of(e))
        .map(|e| e.complement())
        .collect();
    ms.sort_by_key(BitMatrix::to_flat);
    ms.into_iter()
        .map(|m| ApartnessRelation::trusted(carrier.clone(), m))
        .collect()
}

/// Every relation on the carrier that is closed under its equality, in flat
/// bit order.
pub fn relations(carrier: &Carrier) -> impl Iterator<Item = BitMatrix> + '_ {
    let n = carrier.len();
    assert!(n <= FLAT_LIMIT);
    let total: u64 = if n * n == 64 { u64::MAX } else { (1u64 << (n * n)) - 1 };
    let diagonal = carrier.is_diagonal();
    (0..=total)
        .map(move |bits| BitMatrix::from_flat(n, bits))
        .filter(move |m| diagonal || carrier.is_closed_matrix(m))
}

/// Every subset closed under equality, in mask order.
pub fn subsets(carrier: &Carrier) -> impl Iterator<Item = u64> + '_ {
    let all = full_mask(carrier.len());
    (0..=all).filter(move |&m| carrier.is_closed_mask(m))
}

/// Every preorder (reflexive transitive relation) on `n` points, built by
/// inserting one point at a time with a down-closed set below it and an
/// up-closed set above it.
pub fn preorders(n: usize) -> Vec<BitMatrix> {
    let mut current = vec![BitMatrix::empty(0)];
    for k in 0..n {
        let mut next = Vec::new();
        for q in &current {
            let below_all = full_mask(k);
            for down in 0..=below_all {
                // down-closed: y ≤ x ∈ down ⇒ y ∈ down
                if (0..k).any(|x| has(down, x) && (0..k).any(|y| q.get(y, x) && !has(down, y))) {
                    continue;
                }
                for up in 0..=below_all {
                    if (0..k).any(|x| has(up, x) && q.row(x) & !up != 0) {
                        continue;
                    }
                    if (0..k).any(|x| has(down, x) && up & !q.row(x) != 0) {
                        continue;
                    }
                    let mut m = BitMatrix::empty(k + 1);
                    for x in 0..k {
                        m.set_row(x, q.row(x) | (down >> x & 1) << k);
                    }
                    m.set_row(k, up | 1 << k);
                    next.push(m);
                }
            }
        }
        current = next;
    }
    current
}

/// Every co-quasiorder (strongly irreflexive, co-transitive relation) for
/// the apartness, in flat bit order. These are the complements of the
/// preorders that contain the weak equality `¬#`.
pub fn co_quasiorders(ap: &ApartnessRelation) -> Vec<BitMatrix> {
    let n = ap.len();
    assert!(n <= FLAT_LIMIT);
    let weak = ap.weak_equality();
    let mut out: Vec<BitMatrix> = preorders(n)
        .into_iter()
        .filter(|q| weak.is_subset_of(q))
        .map(|q| q.complement())
        .collect();
    out.sort_by_key(BitMatrix::to_flat);
    out
}

/// Whether every value is the least index of its equality class.
pub(crate) fn canonical(c: &Carrier, values: &[usize]) -> bool {
    values.iter().all(|&v| c.class_mask(v).trailing_zeros() as usize == v)
}

/// Every accepted semigroup table for the apartness, in lexicographic order
/// of the row-major entries. Tables are taken up to equality: each entry is
/// the least index of its class. Only sensible for `n ≤ 3`.
pub fn tables(ap: &ApartnessRelation) -> Vec<SemigroupTable> {
    let n = ap.len();
    let carrier = ap.carrier();
    let cells = n * n;
    let total = (n as u64).pow(cells as u32);
    let mut out = Vec::new();
    let mut entries = vec![0usize; cells];
    for code in 0..total {
        let mut c = code;
        for i in (0..cells).rev() {
            entries[i] = (c % n as u64) as usize;
            c /= n as u64;
        }
        if !canonical(carrier, &entries) {
            continue;
        }
        let report = validate_semigroup(ap, &entries).expect("well-formed");
        if report.accepted() {
            out.push(SemigroupTable::trusted(ap.clone(), entries.clone()));
        }
    }
    out
}

/// Every extensional map between the two carriers up to equality in the
/// codomain, as graphs in lexicographic order.
pub fn mappings(dom: &Carrier, cod: &Carrier) -> Vec<Vec<usize>> {
    let n = dom.len();
    let m = cod.len();
    let total = (m as u64).pow(n as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let mut g = vec![0usize; n];
        for i in (0..n).rev() {
            g[i] = (c % m as u64) as usize;
            c /= m as u64;
        }
        if !canonical(cod, &g) {
            continue;
        }
        let ext = (0..n).all(|x| (0..n).all(|y| !dom.equal(x, y) || cod.equal(g[x], g[y])));
        if ext {
            out.push(g);
        }
    }
    out
}
