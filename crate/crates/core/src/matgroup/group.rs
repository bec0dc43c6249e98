use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use num_integer::Integer;
use rayon::prelude::*;

use super::GroupElement;
use crate::error::{Error, Result};

/// Default bound on the number of elements produced by [`FiniteMatrixGroup::close`].
pub const DEFAULT_CAP: usize = 20_000;

/// A finite subgroup of GL_n(Q(zeta_m)) with its full element list.
///
/// Elements are stored in breadth-first insertion order starting from the
/// identity, each new element being `existing * generator` with the
/// generators taken in the order given.
#[derive(Debug)]
pub struct FiniteMatrixGroup {
    n: usize,
    conductor: u64,
    generators: Vec<GroupElement>,
    generator_indices: Vec<usize>,
    elements: Vec<GroupElement>,
    lookup: HashMap<GroupElement, usize>,
    cap: usize,
    orders: OnceLock<Vec<u64>>,
    inverses: OnceLock<Vec<usize>>,
    classes: OnceLock<Vec<Vec<usize>>>,
    cayley: OnceLock<Vec<Vec<u32>>>,
}

impl FiniteMatrixGroup {
    /// Breadth-first closure of `generators` under multiplication.
    pub fn close(generators: Vec<GroupElement>, cap: usize) -> Result<Self> {
        let first = generators
            .first()
            .ok_or_else(|| Error::DimensionMismatch("at least one generator is required".into()))?;
        let n = first.dim();
        let conductor = first.conductor();
        for g in &generators {
            if g.dim() != n {
                return Err(Error::DimensionMismatch(format!(
                    "generator of size {} in a group of degree {n}",
                    g.dim()
                )));
            }
            if g.conductor() != conductor {
                return Err(Error::ConductorMismatch(conductor, g.conductor()));
            }
        }
        for (i, g) in generators.iter().enumerate() {
            if g.det().is_zero() {
                return Err(Error::SingularGenerator(i));
            }
        }
        let identity = GroupElement::identity(n, conductor);
        let mut elements = vec![identity.clone()];
        let mut lookup = HashMap::from([(identity, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(idx) = queue.pop_front() {
            for g in &generators {
                let prod = elements[idx].mul(g);
                if lookup.contains_key(&prod) {
                    continue;
                }
                if elements.len() >= cap {
                    return Err(Error::CapExceeded(cap));
                }
                lookup.insert(prod.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(prod);
            }
        }
        let generator_indices = generators.iter().map(|g| lookup[g]).collect();
        Ok(Self {
            n,
            conductor,
            generators,
            generator_indices,
            elements,
            lookup,
            cap,
            orders: OnceLock::new(),
            inverses: OnceLock::new(),
            classes: OnceLock::new(),
            cayley: OnceLock::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.lookup.get(g).copied()
    }

    /// Index of `elements[i] * elements[j]`.
    pub fn product_index(&self, i: usize, j: usize) -> usize {
        if let Some(t) = self.cayley.get() {
            return t[i][j] as usize;
        }
        let p = self.elements[i].mul(&self.elements[j]);
        self.lookup[&p]
    }

    /// Full multiplication table, built on first use.
    pub fn cayley(&self) -> &[Vec<u32>] {
        self.cayley.get_or_init(|| {
            (0..self.order())
                .into_par_iter()
                .map(|i| {
                    (0..self.order())
                        .map(|j| self.lookup[&self.elements[i].mul(&self.elements[j])] as u32)
                        .collect()
                })
                .collect()
        })
    }

    pub fn element_orders(&self) -> &[u64] {
        self.orders.get_or_init(|| {
            self.elements
                .par_iter()
                .map(|g| g.order(self.cap).expect("elements of a closed group have finite order"))
                .collect()
        })
    }

    pub fn element_order(&self, i: usize) -> u64 {
        self.element_orders()[i]
    }

    /// lcm of the element orders.
    pub fn exponent(&self) -> u64 {
        self.element_orders().iter().fold(1, |acc, &o| acc.lcm(&o))
    }

    /// A conductor containing every eigenvalue of every element.
    pub fn eigen_conductor(&self) -> u64 {
        self.conductor.lcm(&self.exponent())
    }

    pub fn inverse_index(&self, i: usize) -> usize {
        self.inverses.get_or_init(|| {
            (0..self.order())
                .into_par_iter()
                .map(|k| {
                    let d = self.element_order(k);
                    self.lookup[&self.elements[k].pow(d - 1)]
                })
                .collect()
        })[i]
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        (0..g.len()).all(|i| (i + 1..g.len()).all(|j| g[i].mul(&g[j]) == g[j].mul(&g[i])))
    }

    /// Indices of all pseudo-reflections, ascending.
    pub fn pseudo_reflections(&self) -> Vec<usize> {
        self.elements
            .par_iter()
            .enumerate()
            .filter(|(_, g)| g.is_pseudo_reflection())
            .map(|(i, _)| i)
            .collect()
    }

    /// Conjugacy classes as sorted index lists, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        self.classes.get_or_init(|| self.compute_classes())
    }

    fn compute_classes(&self) -> Vec<Vec<usize>> {
        let size = self.order();
        if self.is_abelian() {
            return (0..size).map(|i| vec![i]).collect();
        }
        // Conjugation by the generators generates conjugation by all of G.
        let conj: Vec<(GroupElement, GroupElement)> = self
            .generator_indices
            .iter()
            .map(|&s| (self.elements[s].clone(), self.elements[self.inverse_index(s)].clone()))
            .collect();
        let mut class_of = vec![usize::MAX; size];
        let mut classes = Vec::new();
        for start in 0..size {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            class_of[start] = id;
            let mut members = vec![start];
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for (s, s_inv) in &conj {
                    let y = self.lookup[&s.mul(&self.elements[x]).mul(s_inv)];
                    if class_of[y] == usize::MAX {
                        class_of[y] = id;
                        members.push(y);
                        stack.push(y);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        classes
    }

    /// Smallest index of each conjugacy class.
    pub fn class_representatives(&self) -> Vec<usize> {
        self.conjugacy_classes().iter().map(|c| c[0]).collect()
    }

    /// Closes a set of element indices inside this group.
    pub fn subgroup_closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut members = vec![0usize];
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.product_index(x, g);
                if !seen[y] {
                    seen[y] = true;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        members.sort_unstable();
        members
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Cyclotomic;
    use std::collections::{BTreeSet, HashSet};

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

    /// Closure oracle: repeated products of all pairs until nothing new.
    fn naive_closure(gens: &[GroupElement]) -> HashSet<GroupElement> {
        let mut set: HashSet<GroupElement> = gens.iter().cloned().collect();
        loop {
            let items: Vec<_> = set.iter().cloned().collect();
            let mut grew = false;
            for a in &items {
                for b in &items {
                    if set.insert(a.mul(b)) {
                        grew = true;
                    }
                }
            }
            if !grew {
                return set;
            }
        }
    }

    #[test]
    fn trivial_and_cyclic() {
        let g = FiniteMatrixGroup::close(vec![GroupElement::identity(2, 1)], DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.conjugacy_classes(), &[vec![0]]);
        let c = FiniteMatrixGroup::close(vec![GroupElement::diagonal_roots(3, &[1, 1])], DEFAULT_CAP)
            .unwrap();
        assert_eq!(c.order(), 3);
        assert_eq!(c.conjugacy_classes().len(), 3);
        assert!(c.pseudo_reflections().is_empty());
        assert_eq!(c.exponent(), 3);
    }

    #[test]
    fn quaternion_group() {
        let q = quaternion();
        assert_eq!(q.order(), 8);
        let oracle = naive_closure(q.generators());
        assert_eq!(oracle.len(), 8);
        assert!(q.elements().iter().all(|e| oracle.contains(e)));
        let mut sizes: Vec<usize> = q.conjugacy_classes().iter().map(|c| c.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
        assert!(q.pseudo_reflections().is_empty());
        assert!(q.element(0).is_identity());
    }

    #[test]
    fn classes_match_brute_force() {
        let q = quaternion();
        let mut brute: BTreeSet<Vec<usize>> = BTreeSet::new();
        for x in 0..q.order() {
            let mut class: Vec<usize> = (0..q.order())
                .map(|a| {
                    let ai = q.inverse_index(a);
                    q.product_index(q.product_index(a, x), ai)
                })
                .collect();
            class.sort();
            class.dedup();
            brute.insert(class);
        }
        let ours: BTreeSet<Vec<usize>> = q.conjugacy_classes().iter().cloned().collect();
        assert_eq!(ours, brute);
    }

    #[test]
    fn generator_order_does_not_matter() {
        let a = GroupElement::diagonal_roots(4, &[1, 3]);
        let b = GroupElement::from_integers(4, &[vec![0, 1], vec![-1, 0]]).unwrap();
        let g1 = FiniteMatrixGroup::close(vec![a.clone(), b.clone()], DEFAULT_CAP).unwrap();
        let g2 = FiniteMatrixGroup::close(vec![b, a], DEFAULT_CAP).unwrap();
        let s1: HashSet<_> = g1.elements().iter().cloned().collect();
        let s2: HashSet<_> = g2.elements().iter().cloned().collect();
        assert_eq!(s1, s2);
    }

    #[test]
    fn lagrange_and_orders() {
        let q = quaternion();
        for i in 0..q.order() {
            let d = q.element_order(i);
            assert!(q.element(i).pow(d).is_identity());
            assert_eq!(q.order() as u64 % d, 0);
            assert_eq!(q.product_index(i, q.inverse_index(i)), 0);
        }
    }

    #[test]
    fn reflection_group() {
        let g = FiniteMatrixGroup::close(vec![GroupElement::diagonal_roots(2, &[1, 0])], DEFAULT_CAP)
            .unwrap();
        assert_eq!(g.pseudo_reflections(), vec![1]);
    }

    #[test]
    fn infinite_group_hits_cap() {
        let shear = GroupElement::from_integers(1, &[vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(
            FiniteMatrixGroup::close(vec![shear], 50).unwrap_err(),
            Error::CapExceeded(50)
        );
    }

    #[test]
    fn singular_generator() {
        let z = GroupElement::from_integers(1, &[vec![1, 0], vec![0, 0]]).unwrap();
        assert_eq!(
            FiniteMatrixGroup::close(vec![z], 50).unwrap_err(),
            Error::SingularGenerator(0)
        );
    }

    #[test]
    fn det_is_multiplicative() {
        let q = quaternion();
        for a in q.elements() {
            for b in q.elements() {
                assert_eq!(a.mul(b).det(), &a.det() * &b.det());
            }
        }
        let _ = Cyclotomic::one(1);
    }
}
