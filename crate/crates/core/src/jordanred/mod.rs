//! Abelian normal subgroups `H` of a finite group `G`, the element
//! `h' = h (g h g^-1) ... (g^(c'-1) h g^-(c'-1))` and the divisibility
//! `d(G) | exponent(G/H) * d(H)`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::determinant_index;
use crate::matgroup::FiniteMatrixGroup;

/// Above this order [`find_abelian_normal`] skips the exhaustive search.
pub const EXHAUSTIVE_LIMIT: usize = 512;

/// A subgroup `H` of a parent group, as sorted element indices of the parent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupWitness {
    pub elements: Vec<usize>,
    pub generators: Vec<usize>,
    pub is_abelian: bool,
    pub is_normal: bool,
    /// `[G : H]`.
    pub index: usize,
    /// lcm over `g` of the least `k > 0` with `g^k` in `H`.
    pub quotient_exponent: u64,
    /// Set when the search that produced this witness was not exhaustive.
    pub heuristic: bool,
}

impl SubgroupWitness {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.elements.binary_search(&i).is_ok()
    }

    pub fn is_abelian_normal(&self) -> bool {
        self.is_abelian && self.is_normal
    }
}

fn commute(g: &FiniteMatrixGroup, a: usize, b: usize) -> bool {
    g.product_index(a, b) == g.product_index(b, a)
}

fn conjugate(g: &FiniteMatrixGroup, by: usize, x: usize) -> usize {
    g.product_index(g.product_index(by, x), g.inverse_index(by))
}

/// Least `k > 0` with `x^k` in `members`.
fn coset_order(g: &FiniteMatrixGroup, x: usize, in_h: &[bool]) -> u64 {
    let mut p = x;
    let mut k = 1;
    while !in_h[p] {
        p = g.product_index(p, x);
        k += 1;
    }
    k
}

/// Closes `gens` inside `g` and records the subgroup's properties.
pub fn verify_subgroup(g: &FiniteMatrixGroup, gens: &[usize]) -> Result<SubgroupWitness> {
    if gens.iter().any(|&i| i >= g.order()) {
        return Err(Error::NotASubgroupOfG);
    }
    let elements = g.subgroup_closure(gens);
    if g.order() % elements.len() != 0 {
        return Err(Error::NotASubgroupOfG);
    }
    let mut in_h = vec![false; g.order()];
    for &e in &elements {
        in_h[e] = true;
    }
    let is_abelian = gens.iter().all(|&a| gens.iter().all(|&b| commute(g, a, b)));
    let is_normal = g
        .generator_indices()
        .iter()
        .all(|&s| elements.iter().all(|&h| in_h[conjugate(g, s, h)]));
    let quotient_exponent = (0..g.order()).fold(1u64, |acc, x| acc.lcm(&coset_order(g, x, &in_h)));
    let mut generators = gens.to_vec();
    generators.sort_unstable();
    generators.dedup();
    Ok(SubgroupWitness {
        index: g.order() / elements.len(),
        elements,
        generators,
        is_abelian,
        is_normal,
        quotient_exponent,
        heuristic: false,
    })
}

/// A largest abelian normal subgroup found, ties broken by the
/// lexicographically smallest element set.
///
/// Candidates: the center; for each conjugacy class, the closure of that
/// class grown greedily by further classes that commute with everything
/// collected so far; and abelian joins of two candidates. Up to
/// [`EXHAUSTIVE_LIMIT`] elements, every maximal set of pairwise commuting
/// classes is also tried, which makes the search complete: an abelian normal
/// subgroup is a union of classes that commute with each other.
pub fn find_abelian_normal(g: &FiniteMatrixGroup) -> Result<SubgroupWitness> {
    if g.order() <= 2048 {
        g.cayley();
    }
    let classes = g.conjugacy_classes();
    let size = g.order();
    let center: Vec<usize> = (0..size)
        .filter(|&x| g.generator_indices().iter().all(|&s| commute(g, s, x)))
        .collect();
    let mut candidates: Vec<Vec<usize>> = vec![center.clone()];

    let commutes_with = |set: &[usize], class: &[usize]| {
        class.iter().all(|&a| set.iter().all(|&b| commute(g, a, b)))
    };
    let self_commuting: Vec<bool> = classes.iter().map(|c| commutes_with(c, c)).collect();

    for (ci, class) in classes.iter().enumerate() {
        if !self_commuting[ci] || !commutes_with(&center, class) {
            continue;
        }
        let mut set = g.subgroup_closure(&[center.as_slice(), class.as_slice()].concat());
        for (cj, other) in classes.iter().enumerate() {
            if cj == ci || !self_commuting[cj] || set.contains(&other[0]) {
                continue;
            }
            if commutes_with(&set, other) {
                set = g.subgroup_closure(&[set.as_slice(), other.as_slice()].concat());
            }
        }
        candidates.push(set);
    }

    let base = candidates.clone();
    for i in 0..base.len() {
        for j in i + 1..base.len() {
            if commutes_with(&base[i], &base[j]) {
                candidates.push(g.subgroup_closure(&[base[i].as_slice(), base[j].as_slice()].concat()));
            }
        }
    }

    let exhaustive = size <= EXHAUSTIVE_LIMIT;
    if exhaustive {
        let usable: Vec<usize> = (0..classes.len()).filter(|&c| self_commuting[c]).collect();
        let adjacent = |a: usize, b: usize| commutes_with(&classes[a], &classes[b]);
        let mut cliques = Vec::new();
        bron_kerbosch(Vec::new(), usable, Vec::new(), &adjacent, &mut cliques);
        for clique in cliques {
            let gens: Vec<usize> = clique.iter().flat_map(|&c| classes[c].iter().copied()).collect();
            candidates.push(g.subgroup_closure(&gens));
        }
    }

    let best = candidates
        .into_iter()
        .min_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)))
        .expect("the center is a candidate");
    let mut w = verify_subgroup(g, &best)?;
    w.generators = minimal_generators(g, &best);
    w.heuristic = !exhaustive;
    debug_assert!(w.is_abelian_normal());
    Ok(w)
}

/// Greedy generating set: keep an element when it is not yet generated.
fn minimal_generators(g: &FiniteMatrixGroup, elements: &[usize]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = vec![0usize];
    for &x in elements {
        if span.binary_search(&x).is_err() {
            gens.push(x);
            span = g.subgroup_closure(&gens);
        }
    }
    gens
}

/// Maximal cliques with pivoting.
fn bron_kerbosch(
    r: Vec<usize>,
    mut p: Vec<usize>,
    mut x: Vec<usize>,
    adjacent: &dyn Fn(usize, usize) -> bool,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r);
        }
        return;
    }
    let pivot = *p.iter().chain(&x).max_by_key(|&&u| p.iter().filter(|&&v| adjacent(u, v)).count()).unwrap();
    let branch: Vec<usize> = p.iter().copied().filter(|&v| !adjacent(pivot, v) || v == pivot).collect();
    for v in branch {
        let mut r2 = r.clone();
        r2.push(v);
        let p2 = p.iter().copied().filter(|&u| u != v && adjacent(u, v)).collect();
        let x2 = x.iter().copied().filter(|&u| u != v && adjacent(u, v)).collect();
        bron_kerbosch(r2, p2, x2, adjacent, out);
        p.retain(|&u| u != v);
        x.push(v);
    }
}

/// `h'` and the three facts the averaging argument needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HPrime {
    pub element: usize,
    pub in_h: bool,
    /// `g h' g^-1 = h'`.
    pub centralized: bool,
    /// `det(h') = det(h)^c'`.
    pub det_ok: bool,
}

impl HPrime {
    pub fn all_ok(&self) -> bool {
        self.in_h && self.centralized && self.det_ok
    }
}

/// `h' = prod_{i < c'} g^i h g^-i` for `h` in the abelian normal subgroup `H`.
///
/// `c'` must make `g^c'` land in `H`; `[G : H]` always does, and so does
/// any multiple of the order of `gH`.
pub fn construct_h_prime(
    g: &FiniteMatrixGroup,
    sub: &SubgroupWitness,
    g_idx: usize,
    h_idx: usize,
    c_prime: u64,
) -> Result<HPrime> {
    if !sub.is_abelian_normal() {
        return Err(Error::HNotAbelianNormal);
    }
    if g_idx >= g.order() || !sub.contains(h_idx) {
        return Err(Error::NotASubgroupOfG);
    }
    let mut g_pow = 0usize;
    let mut acc = 0usize;
    for _ in 0..c_prime {
        acc = g.product_index(acc, conjugate(g, g_pow, h_idx));
        g_pow = g.product_index(g_pow, g_idx);
    }
    if !sub.contains(g_pow) {
        return Err(Error::InvalidExponent { c_prime });
    }
    let det_ok = g.element(acc).det() == g.element(h_idx).det().pow(c_prime);
    Ok(HPrime {
        element: acc,
        in_h: sub.contains(acc),
        centralized: conjugate(g, g_idx, acc) == acc,
        det_ok,
    })
}

/// `{"dG", "dH", "index", "exponent", "divides", "h_prime_checks"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisibilityReport {
    #[serde(rename = "dG")]
    pub d_g: u64,
    #[serde(rename = "dH")]
    pub d_h: u64,
    pub index: usize,
    pub exponent: u64,
    pub divides: bool,
    pub h_prime_checks: bool,
}

/// Above this many `(g, h)` pairs only generator pairs are checked.
const PAIR_LIMIT: usize = 200_000;

/// `d(G)`, `d(H)`, `e = exponent(G/H)` and whether `d(G) | e d(H)`; also
/// checks `h'` with `c' = [G : H]` on all pairs `(g, h)`, or on generator
/// pairs for large groups.
pub fn divisibility_report(g: &FiniteMatrixGroup, sub: &SubgroupWitness) -> Result<DivisibilityReport> {
    if !sub.is_abelian_normal() {
        return Err(Error::HNotAbelianNormal);
    }
    let d_g = determinant_index(g.generators())?;
    let h_gens: Vec<_> = sub.generators.iter().map(|&i| g.element(i).clone()).collect();
    let d_h = determinant_index(&h_gens)?;
    let (gs, hs): (Vec<usize>, Vec<usize>) = if g.order() * sub.order() <= PAIR_LIMIT {
        ((0..g.order()).collect(), sub.elements.clone())
    } else {
        (g.generator_indices().to_vec(), sub.generators.clone())
    };
    let mut h_prime_checks = true;
    for &x in &gs {
        for &h in &hs {
            h_prime_checks &= construct_h_prime(g, sub, x, h, sub.index as u64)?.all_ok();
        }
    }
    Ok(DivisibilityReport {
        d_g,
        d_h,
        index: sub.index,
        exponent: sub.quotient_exponent,
        divides: (sub.quotient_exponent * d_h) % d_g == 0,
        h_prime_checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgroup::{GroupElement, DEFAULT_CAP};

    fn quaternion() -> FiniteMatrixGroup {
        FiniteMatrixGroup::close(
            vec![
                GroupElement::diagonal_roots(4, &[1, 3]),
                GroupElement::from_integers(4, &[vec![0, 1], vec![-1, 0]]).unwrap(),
            ],
            DEFAULT_CAP,
        )
        .unwrap()
    }

    /// `<diag(zeta_3, zeta_3), [[0,1],[-1,0]]>`, order 12.
    fn mixed12() -> FiniteMatrixGroup {
        FiniteMatrixGroup::close(
            vec![
                GroupElement::diagonal_roots(3, &[1, 1]),
                GroupElement::from_integers(3, &[vec![0, 1], vec![-1, 0]]).unwrap(),
            ],
            DEFAULT_CAP,
        )
        .unwrap()
    }

    fn index_of(g: &FiniteMatrixGroup, e: &GroupElement) -> usize {
        g.index_of(&e.embed(g.conductor()).unwrap()).unwrap()
    }

    /// Every subgroup, by closing all subsets of at most two generators;
    /// enough for groups of order 8 and 12 here.
    fn all_subgroups(g: &FiniteMatrixGroup) -> Vec<Vec<usize>> {
        let mut subs = vec![vec![0]];
        for a in 0..g.order() {
            for b in a..g.order() {
                let s = g.subgroup_closure(&[a, b]);
                if !subs.contains(&s) {
                    subs.push(s);
                }
            }
        }
        subs
    }

    fn brute_force_abelian_normal(g: &FiniteMatrixGroup, s: &[usize]) -> bool {
        s.iter().all(|&a| s.iter().all(|&b| commute(g, a, b)))
            && (0..g.order()).all(|x| s.iter().all(|&h| s.contains(&conjugate(g, x, h))))
    }

    #[test]
    fn quaternion_center() {
        let q = quaternion();
        let minus_one = index_of(&q, &GroupElement::from_integers(1, &[vec![-1, 0], vec![0, -1]]).unwrap());
        let w = verify_subgroup(&q, &[minus_one]).unwrap();
        assert!(w.is_abelian && w.is_normal);
        assert_eq!((w.order(), w.index), (2, 4));
        assert_eq!(w.quotient_exponent, 2);
    }

    #[test]
    fn whole_abelian_group() {
        let g = FiniteMatrixGroup::close(vec![GroupElement::diagonal_roots(5, &[1, 2])], DEFAULT_CAP).unwrap();
        let w = verify_subgroup(&g, &[1]).unwrap();
        assert_eq!((w.index, w.quotient_exponent), (1, 1));
        let found = find_abelian_normal(&g).unwrap();
        assert_eq!(found.index, 1);
        let r = divisibility_report(&g, &found).unwrap();
        assert_eq!((r.exponent, r.d_g == r.d_h, r.divides), (1, true, true));
    }

    #[test]
    fn binary_dihedral_diagonal_subgroup() {
        let q = quaternion();
        let a = index_of(&q, &GroupElement::diagonal_roots(4, &[1, 3]));
        let w = verify_subgroup(&q, &[a]).unwrap();
        assert!(w.is_abelian_normal());
        assert_eq!(w.index, 2);
        let g = index_of(&q, &GroupElement::from_integers(1, &[vec![0, 1], vec![-1, 0]]).unwrap());
        let hp = construct_h_prime(&q, &w, g, a, 2).unwrap();
        assert_eq!(hp.element, 0);
        assert!(hp.all_ok());
    }

    #[test]
    fn h_prime_of_center_element() {
        let q = quaternion();
        let minus_one = index_of(&q, &GroupElement::from_integers(1, &[vec![-1, 0], vec![0, -1]]).unwrap());
        let center = verify_subgroup(&q, &[minus_one]).unwrap();
        let g = index_of(&q, &GroupElement::diagonal_roots(4, &[1, 3]));
        let hp = construct_h_prime(&q, &center, g, minus_one, 4).unwrap();
        assert_eq!(hp.element, 0);
        assert!(hp.all_ok());
        // g^2 = -1 lies in the center but g does not
        assert!(construct_h_prime(&q, &center, g, minus_one, 2).is_ok());
        assert_eq!(
            construct_h_prime(&q, &center, g, minus_one, 1).unwrap_err(),
            Error::InvalidExponent { c_prime: 1 }
        );
    }

    #[test]
    fn abelian_group_h_prime_is_h() {
        let g = FiniteMatrixGroup::close(vec![GroupElement::diagonal_roots(6, &[1, 5])], DEFAULT_CAP).unwrap();
        let w = verify_subgroup(&g, &[1]).unwrap();
        for x in 0..g.order() {
            for h in 0..g.order() {
                assert_eq!(construct_h_prime(&g, &w, x, h, 1).unwrap().element, h);
            }
        }
    }

    #[test]
    fn search_matches_exhaustive_oracle() {
        for g in [quaternion(), mixed12()] {
            let best = all_subgroups(&g)
                .into_iter()
                .filter(|s| brute_force_abelian_normal(&g, s))
                .map(|s| s.len())
                .max()
                .unwrap();
            let w = find_abelian_normal(&g).unwrap();
            assert_eq!(w.order(), best);
            assert!(brute_force_abelian_normal(&g, &w.elements));
            assert!(!w.heuristic);
        }
        assert_eq!(find_abelian_normal(&quaternion()).unwrap().index, 2);
        // zeta_3 I is scalar, so this group is cyclic of order 12
        assert_eq!(find_abelian_normal(&mixed12()).unwrap().index, 1);
    }

    #[test]
    fn mixed_group_divisibility() {
        let g = mixed12();
        assert_eq!(g.order(), 12);
        let z = index_of(&g, &GroupElement::diagonal_roots(3, &[1, 1]));
        let minus_one = index_of(&g, &GroupElement::from_integers(1, &[vec![-1, 0], vec![0, -1]]).unwrap());
        let w = verify_subgroup(&g, &[z, minus_one]).unwrap();
        assert!(w.is_abelian_normal());
        let r = divisibility_report(&g, &w).unwrap();
        assert_eq!((r.d_g, r.d_h, r.index, r.exponent), (3, 3, 2, 2));
        assert!(r.divides && r.h_prime_checks);
        let json = serde_json::to_value(&r).unwrap();
        for key in ["dG", "dH", "index", "exponent", "divides", "h_prime_checks"] {
            assert!(json.get(key).is_some(), "{key}");
        }
    }

    #[test]
    fn non_normal_subgroup_rejected() {
        // S_3 as permutation matrices; a transposition generates a non-normal subgroup
        let s3 = FiniteMatrixGroup::close(
            vec![
                GroupElement::from_integers(1, &[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]).unwrap(),
                GroupElement::from_integers(1, &[vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]).unwrap(),
            ],
            DEFAULT_CAP,
        )
        .unwrap();
        let t = s3.generator_indices()[0];
        let w = verify_subgroup(&s3, &[t]).unwrap();
        assert!(w.is_abelian && !w.is_normal);
        assert_eq!(divisibility_report(&s3, &w).unwrap_err(), Error::HNotAbelianNormal);
        assert_eq!(find_abelian_normal(&s3).unwrap().order(), 3);
    }
}
