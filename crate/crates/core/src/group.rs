//! Permutation groups with an enumerated element closure.
//!
//! Elements are stored in breadth-first order from the identity; every
//! element remembers its BFS parent and the generator that reached it, so a
//! word in the generators is available for each element and homomorphisms
//! can be evaluated by walking the tree.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Default cap on the closure size.
pub const DEFAULT_GROUP_CAP: usize = 20_000;

/// Images `0..degree`, acting on the right: `i^g = g[i]`.
pub type Perm = Vec<u32>;

#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    // (parent element, generator) with element = parent * generator
    parent: Vec<Option<(usize, usize)>>,
    // right_mul[x][s] = index of x * s
    right_mul: Vec<Vec<usize>>,
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.generators == other.generators
    }
}

impl Eq for PermGroup {}

/// `(a * b)` acting on the right: first `a`, then `b`.
pub fn compose(a: &[u32], b: &[u32]) -> Perm {
    a.iter().map(|&i| b[i as usize]).collect()
}

pub fn invert(a: &[u32]) -> Perm {
    let mut inv = vec![0u32; a.len()];
    for (i, &j) in a.iter().enumerate() {
        inv[j as usize] = i as u32;
    }
    inv
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<PermGroup> {
        PermGroup::with_cap(degree, generators, DEFAULT_GROUP_CAP)
    }

    pub fn with_cap(degree: usize, generators: Vec<Perm>, cap: usize) -> Result<PermGroup> {
        if degree == 0 {
            return Err(Error::Group("degree must be positive".into()));
        }
        for (k, g) in generators.iter().enumerate() {
            if g.len() != degree {
                return Err(Error::Group(format!(
                    "generator {k} has {} images, degree is {degree}",
                    g.len()
                )));
            }
            let mut seen = vec![false; degree];
            for &i in g {
                if i as usize >= degree || seen[i as usize] {
                    return Err(Error::Group(format!(
                        "generator {k} is not a permutation of 0..{degree}"
                    )));
                }
                seen[i as usize] = true;
            }
        }
        let identity: Perm = (0..degree as u32).collect();
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::new();
        index.insert(identity, 0);
        let mut parent = vec![None];
        let mut i = 0;
        while i < elements.len() {
            for (s, g) in generators.iter().enumerate() {
                let y = compose(&elements[i], g);
                if !index.contains_key(&y) {
                    if elements.len() >= cap {
                        return Err(Error::Cap(format!("group closure exceeds {cap} elements")));
                    }
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                    parent.push(Some((i, s)));
                }
            }
            i += 1;
        }
        let right_mul = elements
            .iter()
            .map(|x| generators.iter().map(|g| index[&compose(x, g)]).collect())
            .collect();
        Ok(PermGroup {
            degree,
            generators,
            elements,
            index,
            parent,
            right_mul,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &[u32]) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// `(parent, generator)` of element `i` in the BFS tree; `None` for the identity.
    pub fn parent(&self, i: usize) -> Option<(usize, usize)> {
        self.parent[i]
    }

    pub fn right_mul(&self, x: usize, s: usize) -> usize {
        self.right_mul[x][s]
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.index[&compose(&self.elements[x], &self.elements[y])]
    }

    /// Generator indices whose product (left to right) is element `i`.
    pub fn word(&self, i: usize) -> Vec<usize> {
        let mut w = Vec::new();
        let mut cur = i;
        while let Some((p, s)) = self.parent[cur] {
            w.push(s);
            cur = p;
        }
        w.reverse();
        w
    }

    /// Evaluates a homomorphism into a group given by `mul` on every element,
    /// from generator images, following the BFS tree.
    pub fn extend_hom<T: Clone>(
        &self,
        identity: T,
        gens: &[T],
        mul: impl Fn(&T, &T) -> T,
    ) -> Vec<T> {
        let mut out: Vec<T> = Vec::with_capacity(self.order());
        out.push(identity);
        for i in 1..self.order() {
            let (p, s) = self.parent[i].expect("non-identity has a parent");
            let v = mul(&out[p], &gens[s]);
            out.push(v);
        }
        out
    }

    /// Checks that generator images extend to a homomorphism: the tree
    /// extension must agree with every multiplication edge.
    pub fn is_hom<T: Clone + PartialEq>(
        &self,
        identity: T,
        gens: &[T],
        mul: impl Fn(&T, &T) -> T,
    ) -> bool {
        let vals = self.extend_hom(identity, gens, &mul);
        (0..self.order()).all(|x| {
            (0..self.num_generators())
                .all(|s| mul(&vals[x], &gens[s]) == vals[self.right_mul[x][s]])
        })
    }
}

/// A homomorphism `G -> C2` given by its values on the generators.
pub type Character2 = Vec<u8>;

/// Basis of `Hom(G, C2)` and its rank `t`.
///
/// A generator assignment is a homomorphism iff it respects every edge
/// `x * s = y` of the Cayley graph; each edge gives one F2-linear condition
/// on the parity vectors of BFS words.
pub fn two_torsion_characters(g: &PermGroup) -> (usize, Vec<Character2>) {
    let k = g.num_generators();
    // parity of each generator in the tree word of every element
    let parity = g.extend_hom(vec![0u8; k], &unit_vectors(k), |a, b| {
        a.iter().zip(b).map(|(x, y)| x ^ y).collect()
    });
    let mut constraints: Vec<Vec<u8>> = Vec::new();
    for x in 0..g.order() {
        for s in 0..k {
            let y = g.right_mul(x, s);
            let mut c = parity[x].clone();
            c[s] ^= 1;
            for (ci, yi) in c.iter_mut().zip(&parity[y]) {
                *ci ^= yi;
            }
            if c.iter().any(|&b| b != 0) {
                constraints.push(c);
            }
        }
    }
    let taus = f2_orthogonal_complement(&constraints, k);
    (taus.len(), taus)
}

fn unit_vectors(k: usize) -> Vec<Vec<u8>> {
    (0..k)
        .map(|i| {
            let mut v = vec![0u8; k];
            v[i] = 1;
            v
        })
        .collect()
}

/// Reduced echelon basis of `{x : c . x = 0 for all c}` over F2.
pub fn f2_orthogonal_complement(constraints: &[Vec<u8>], k: usize) -> Vec<Vec<u8>> {
    let mut rows: Vec<Vec<u8>> = constraints.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] == 1) else {
            continue;
        };
        rows.swap(p, r);
        for i in 0..rows.len() {
            if i != r && rows[i][c] == 1 {
                let pr = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pr) {
                    *x ^= y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..k).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &fc in &free {
        let mut v = vec![0u8; k];
        v[fc] = 1;
        for (ri, &pc) in pivots.iter().enumerate() {
            v[pc] = rows[ri][fc];
        }
        basis.push(v);
    }
    // echelon by leading position
    basis.sort_by(|a, b| b.cmp(a));
    basis
}

/// Solves `sum_j c_j basis_j = target` over F2.
pub fn f2_coordinates(basis: &[Vec<u8>], target: &[u8]) -> Option<Vec<u8>> {
    let k = basis.len();
    let n = target.len();
    // columns are basis vectors; eliminate on the transposed system
    let mut rows: Vec<(Vec<u8>, u8)> = (0..n)
        .map(|i| ((0..k).map(|j| basis[j][i]).collect(), target[i]))
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..n).find(|&i| rows[i].0[c] == 1) else {
            continue;
        };
        rows.swap(p, r);
        for i in 0..n {
            if i != r && rows[i].0[c] == 1 {
                let pr = rows[r].clone();
                for (x, y) in rows[i].0.iter_mut().zip(&pr.0) {
                    *x ^= y;
                }
                rows[i].1 ^= pr.1;
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|(_, b)| *b != 0) {
        return None;
    }
    let mut sol = vec![0u8; k];
    for (ri, &pc) in pivots.iter().enumerate() {
        sol[pc] = rows[ri].1;
    }
    Some(sol)
}

/// Standard small groups used in tests, examples and the CLI docs.
pub mod standard {
    use super::*;

    pub fn cyclic(n: usize) -> PermGroup {
        let gen: Perm = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
        PermGroup::new(n.max(1), vec![gen]).expect("cyclic group")
    }

    pub fn symmetric3() -> PermGroup {
        PermGroup::new(3, vec![vec![1, 0, 2], vec![1, 2, 0]]).expect("S3")
    }

    pub fn dihedral8() -> PermGroup {
        PermGroup::new(4, vec![vec![1, 2, 3, 0], vec![2, 1, 0, 3]]).expect("D8")
    }

    pub fn alternating5() -> PermGroup {
        PermGroup::new(5, vec![vec![1, 2, 3, 4, 0], vec![1, 2, 0, 3, 4]]).expect("A5")
    }

    /// Q8 in its regular permutation representation, generated by `i` and `j`.
    ///
    /// Points `0..8` stand for `1, i, j, k, -1, -i, -j, -k`.
    pub fn quaternion8() -> PermGroup {
        // unit index 0..4 for 1,i,j,k and sign bit 4
        fn mul(a: u32, b: u32) -> u32 {
            let (sa, ua) = (a / 4, a % 4);
            let (sb, ub) = (b / 4, b % 4);
            // table of (sign, unit) for unit products
            let table: [[(u32, u32); 4]; 4] = [
                [(0, 0), (0, 1), (0, 2), (0, 3)],
                [(0, 1), (1, 0), (0, 3), (1, 2)],
                [(0, 2), (1, 3), (1, 0), (0, 1)],
                [(0, 3), (0, 2), (1, 1), (1, 0)],
            ];
            let (s, u) = table[ua as usize][ub as usize];
            ((sa + sb + s) % 2) * 4 + u
        }
        let right = |g: u32| -> Perm { (0..8).map(|x| mul(x, g)).collect() };
        PermGroup::new(8, vec![right(1), right(2)]).expect("Q8")
    }
}

#[cfg(test)]
mod tests {
    use super::standard::*;
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(cyclic(2).order(), 2);
        assert_eq!(symmetric3().order(), 6);
        assert_eq!(alternating5().order(), 60);
        assert_eq!(dihedral8().order(), 8);
        assert_eq!(quaternion8().order(), 8);
    }

    #[test]
    fn cap_and_validation() {
        let s5 = vec![vec![1, 2, 3, 4, 0], vec![1, 0, 2, 3, 4]];
        assert!(matches!(
            PermGroup::with_cap(5, s5, 100),
            Err(Error::Cap(_))
        ));
        assert!(PermGroup::new(3, vec![vec![0, 0, 1]]).is_err());
        assert!(PermGroup::new(3, vec![vec![0, 1]]).is_err());
        assert!(PermGroup::new(3, vec![vec![0, 1, 5]]).is_err());
    }

    #[test]
    fn words_multiply_back() {
        let g = alternating5();
        for i in 0..g.order() {
            let mut p: Perm = (0..5).collect();
            for s in g.word(i) {
                p = compose(&p, &g.generators()[s]);
            }
            assert_eq!(g.index_of(&p), Some(i));
        }
    }

    #[test]
    fn character_ranks() {
        assert_eq!(two_torsion_characters(&cyclic(2)), (1, vec![vec![1]]));
        assert_eq!(two_torsion_characters(&cyclic(3)).0, 0);
        assert_eq!(two_torsion_characters(&cyclic(4)).0, 1);
        assert_eq!(two_torsion_characters(&symmetric3()).0, 1);
        assert_eq!(two_torsion_characters(&alternating5()).0, 0);
        assert_eq!(two_torsion_characters(&quaternion8()).0, 2);
        assert_eq!(two_torsion_characters(&dihedral8()).0, 2);
    }

    #[test]
    fn characters_are_homomorphisms() {
        for g in [symmetric3(), quaternion8(), dihedral8(), cyclic(6)] {
            let (_, taus) = two_torsion_characters(&g);
            for tau in taus {
                assert!(g.is_hom(0u8, &tau, |a, b| a ^ b));
            }
        }
    }

    #[test]
    fn f2_solve() {
        let basis = vec![vec![1, 0, 1], vec![0, 1, 1]];
        assert_eq!(f2_coordinates(&basis, &[1, 1, 0]), Some(vec![1, 1]));
        assert_eq!(f2_coordinates(&basis, &[1, 1, 1]), None);
    }
}
