//! Finite Coxeter groups: enumeration, multiplication, length, descents,
//! Bruhat order and standard parabolic subgroups.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::numfield::{NfElem, NumberField};

/// Default cap on the number of enumerated elements.
pub const DEFAULT_CAP: usize = 20_000;

/// Symmetric Coxeter matrix `(m_st)` with unit diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterMatrix {
    rank: usize,
    m: Vec<u32>,
}

impl CoxeterMatrix {
    pub fn new(rows: &[Vec<u32>]) -> Result<Self> {
        let rank = rows.len();
        if rank == 0 {
            return Err(Error::Input("Coxeter matrix must have at least one generator".into()));
        }
        if rank > 32 {
            return Err(Error::Input("at most 32 generators are supported".into()));
        }
        let mut m = Vec::with_capacity(rank * rank);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::Input("Coxeter matrix must be square".into()));
            }
            for (j, &x) in row.iter().enumerate() {
                if i == j && x != 1 {
                    return Err(Error::Input(format!("m({i},{i}) must be 1")));
                }
                if i != j && x < 2 {
                    return Err(Error::Input(format!("m({i},{j}) must be at least 2")));
                }
                if rows[j][i] != x {
                    return Err(Error::Input("Coxeter matrix must be symmetric".into()));
                }
                m.push(x);
            }
        }
        Ok(Self { rank, m })
    }

    fn from_edges(rank: usize, edges: &[(usize, usize, u32)]) -> Self {
        let mut rows = vec![vec![2u32; rank]; rank];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = 1;
        }
        for &(i, j, x) in edges {
            rows[i][j] = x;
            rows[j][i] = x;
        }
        Self::new(&rows).expect("preset matrix is valid")
    }

    fn chain(rank: usize, labels: &[u32]) -> Self {
        let edges: Vec<_> = labels.iter().enumerate().map(|(i, &x)| (i, i + 1, x)).collect();
        Self::from_edges(rank, &edges)
    }

    pub fn type_a(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Input("A_n needs n >= 1".into()));
        }
        Ok(Self::chain(n, &vec![3; n - 1]))
    }

    /// `B_n`; generator 0 is the node joined to generator 1 by `m = 4`.
    pub fn type_b(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Input("B_n needs n >= 2".into()));
        }
        let mut labels = vec![3; n - 1];
        labels[0] = 4;
        Ok(Self::chain(n, &labels))
    }

    /// `D_n`; generators 0 and 1 are the two short branches at node 2.
    pub fn type_d(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Input("D_n needs n >= 3".into()));
        }
        let mut edges = vec![(0, 2, 3), (1, 2, 3)];
        for i in 2..n - 1 {
            edges.push((i, i + 1, 3));
        }
        Ok(Self::from_edges(n, &edges))
    }

    pub fn dihedral(m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::Input("I2(m) needs m >= 2".into()));
        }
        Ok(Self::from_edges(2, &[(0, 1, m)]))
    }

    pub fn type_h3() -> Self {
        Self::chain(3, &[5, 3])
    }

    pub fn type_h4() -> Self {
        Self::chain(4, &[5, 3, 3])
    }

    /// `F_4` with the double bond between generators 1 and 2.
    pub fn type_f4() -> Self {
        Self::chain(4, &[3, 4, 3])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.m[i * self.rank + j]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.m.chunks(self.rank).map(|r| r.to_vec()).collect()
    }

    /// Submatrix on the generators `gens` (in the given order).
    pub fn restrict(&self, gens: &[usize]) -> Result<Self> {
        let rows: Vec<Vec<u32>> = gens
            .iter()
            .map(|&i| gens.iter().map(|&j| self.get(i, j)).collect())
            .collect();
        Self::new(&rows)
    }

    /// Conjugacy class index of each generator; `s, t` are conjugate iff
    /// joined by a path of odd labels.
    pub fn generator_classes(&self) -> Vec<usize> {
        let n = self.rank;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for i in 0..n {
            for j in i + 1..n {
                if self.get(i, j) % 2 == 1 {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let roots: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
        let mut labels: Vec<usize> = Vec::new();
        roots
            .iter()
            .map(|r| match labels.iter().position(|x| x == r) {
                Some(k) => k,
                None => {
                    labels.push(*r);
                    labels.len() - 1
                }
            })
            .collect()
    }

    /// Conductor `N` with `2cos(π/m_st) ∈ Q(2cos(2π/N))` for all labels.
    pub fn conductor(&self) -> u32 {
        self.m.iter().fold(1u32, |acc, &x| acc.lcm(&(2 * x)))
    }
}

/// An element of an enumerated [`CoxeterGroup`], by its ShortLex index.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub u32);

impl Elem {
    pub const IDENTITY: Elem = Elem(0);

    pub fn id(self) -> usize {
        self.0 as usize
    }
}

/// Fully enumerated finite Coxeter group. Elements are indexed by
/// ShortLex order of their canonical reduced words, so the identity is 0
/// and indices increase with length.
#[derive(Clone, Debug)]
pub struct CoxeterGroup {
    matrix: CoxeterMatrix,
    rank: usize,
    words: Vec<Vec<u8>>,
    lengths: Vec<u32>,
    lmul: Vec<u32>,
    rmul: Vec<u32>,
    inv: Vec<u32>,
    ldesc: Vec<u32>,
    rdesc: Vec<u32>,
    classes: Vec<usize>,
    longest: u32,
}

impl CoxeterGroup {
    pub fn new(matrix: CoxeterMatrix) -> Result<Self> {
        Self::with_cap(matrix, DEFAULT_CAP)
    }

    /// Enumerates the group through its geometric representation, acting
    /// on the orbit of `ρ` in fundamental-weight coordinates:
    /// `(s_i λ)_i = -λ_i`, `(s_i λ)_j = λ_j + 2cos(π/m_ij) λ_i`.
    pub fn with_cap(matrix: CoxeterMatrix, cap: usize) -> Result<Self> {
        let n = matrix.rank();
        let field = NumberField::real_cyclotomic(matrix.conductor());
        let big_n = field.conductor() as i64;
        // 2cos(π/m) = 2cos(2π (N/2m) / N)
        let coef: Vec<Vec<NfElem>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let m = matrix.get(i, j) as i64;
                        field.two_cos(big_n / (2 * m))
                    })
                    .collect()
            })
            .collect();
        let act = |s: usize, v: &[NfElem]| -> Vec<NfElem> {
            let mut out = v.to_vec();
            out[s] = v[s].neg();
            if !v[s].is_zero() {
                for j in 0..n {
                    if j != s {
                        out[j] = v[j].add(&coef[s][j].mul(&v[s]));
                    }
                }
            }
            out
        };

        let rho: Vec<NfElem> = (0..n).map(|_| field.one()).collect();
        let mut index: HashMap<Vec<NfElem>, u32> = HashMap::new();
        let mut vecs: Vec<Vec<NfElem>> = vec![rho.clone()];
        let mut lens: Vec<u32> = vec![0];
        index.insert(rho, 0);
        let mut lmul_raw: Vec<u32> = Vec::new();
        let mut queue = VecDeque::from([0u32]);
        while let Some(w) = queue.pop_front() {
            let w = w as usize;
            if lmul_raw.len() < (w + 1) * n {
                lmul_raw.resize((w + 1) * n, u32::MAX);
            }
            for s in 0..n {
                let v = act(s, &vecs[w]);
                let id = match index.get(&v) {
                    Some(&id) => id,
                    None => {
                        let id = vecs.len() as u32;
                        if vecs.len() >= cap {
                            return Err(Error::GroupTooLarge { cap });
                        }
                        index.insert(v.clone(), id);
                        vecs.push(v);
                        lens.push(lens[w] + 1);
                        queue.push_back(id);
                        id
                    }
                };
                lmul_raw[w * n + s] = id;
            }
        }
        let size = vecs.len();
        drop(index);
        drop(vecs);

        // canonical words in BFS order (which is by length)
        let mut words_raw: Vec<Vec<u8>> = vec![Vec::new(); size];
        for w in 1..size {
            let s = (0..n)
                .find(|&s| lens[lmul_raw[w * n + s] as usize] < lens[w])
                .expect("non-identity element has a left descent");
            let mut word = vec![s as u8];
            word.extend_from_slice(&words_raw[lmul_raw[w * n + s] as usize]);
            words_raw[w] = word;
        }
        let mut order: Vec<u32> = (0..size as u32).collect();
        order.sort_by(|&a, &b| {
            let (a, b) = (a as usize, b as usize);
            lens[a].cmp(&lens[b]).then_with(|| words_raw[a].cmp(&words_raw[b]))
        });
        let mut new_id = vec![0u32; size];
        for (k, &old) in order.iter().enumerate() {
            new_id[old as usize] = k as u32;
        }
        let mut lmul = vec![0u32; size * n];
        let mut words = Vec::with_capacity(size);
        let mut lengths = Vec::with_capacity(size);
        for (k, &old) in order.iter().enumerate() {
            let old = old as usize;
            for s in 0..n {
                lmul[k * n + s] = new_id[lmul_raw[old * n + s] as usize];
            }
            words.push(core::mem::take(&mut words_raw[old]));
            lengths.push(lens[old]);
        }

        let mut inv = vec![0u32; size];
        for (w, word) in words.iter().enumerate() {
            let mut x = 0u32;
            for &a in word {
                x = lmul[x as usize * n + a as usize];
            }
            inv[w] = x;
        }
        let mut rmul = vec![0u32; size * n];
        for w in 0..size {
            for s in 0..n {
                rmul[w * n + s] = inv[lmul[inv[w] as usize * n + s] as usize];
            }
        }
        let mut ldesc = vec![0u32; size];
        let mut rdesc = vec![0u32; size];
        for w in 0..size {
            for s in 0..n {
                if lengths[lmul[w * n + s] as usize] < lengths[w] {
                    ldesc[w] |= 1 << s;
                }
                if lengths[rmul[w * n + s] as usize] < lengths[w] {
                    rdesc[w] |= 1 << s;
                }
            }
        }
        let classes = matrix.generator_classes();
        Ok(Self {
            matrix,
            rank: n,
            words,
            lengths,
            lmul,
            rmul,
            inv,
            ldesc,
            rdesc,
            classes,
            longest: (size - 1) as u32,
        })
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    /// Number of generators.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn size(&self) -> usize {
        self.lengths.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.size() as u32).map(Elem)
    }

    pub fn generator(&self, s: usize) -> Elem {
        Elem(self.lmul[s])
    }

    pub fn word(&self, w: Elem) -> &[u8] {
        &self.words[w.id()]
    }

    pub fn length(&self, w: Elem) -> u32 {
        self.lengths[w.id()]
    }

    /// `s·w`.
    pub fn lmul(&self, s: usize, w: Elem) -> Elem {
        Elem(self.lmul[w.id() * self.rank + s])
    }

    /// `w·s`.
    pub fn rmul(&self, w: Elem, s: usize) -> Elem {
        Elem(self.rmul[w.id() * self.rank + s])
    }

    pub fn inverse(&self, w: Elem) -> Elem {
        Elem(self.inv[w.id()])
    }

    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.word(x)
            .iter()
            .rev()
            .fold(y, |acc, &s| self.lmul(s as usize, acc))
    }

    /// Product of the generators in `word`, not necessarily reduced.
    pub fn from_word(&self, word: &[u8]) -> Elem {
        word.iter()
            .rev()
            .fold(Elem::IDENTITY, |acc, &s| self.lmul(s as usize, acc))
    }

    /// Left descent set as a bitmask.
    pub fn left_descents(&self, w: Elem) -> u32 {
        self.ldesc[w.id()]
    }

    pub fn right_descents(&self, w: Elem) -> u32 {
        self.rdesc[w.id()]
    }

    pub fn is_left_descent(&self, s: usize, w: Elem) -> bool {
        self.ldesc[w.id()] >> s & 1 == 1
    }

    pub fn is_right_descent(&self, w: Elem, s: usize) -> bool {
        self.rdesc[w.id()] >> s & 1 == 1
    }

    /// Smallest left descent; `None` for the identity.
    pub fn first_descent(&self, w: Elem) -> Option<usize> {
        let d = self.ldesc[w.id()];
        (d != 0).then(|| d.trailing_zeros() as usize)
    }

    pub fn longest(&self) -> Elem {
        Elem(self.longest)
    }

    pub fn generator_class(&self, s: usize) -> usize {
        self.classes[s]
    }

    pub fn generator_classes(&self) -> &[usize] {
        &self.classes
    }

    /// Elements of the standard parabolic subgroup `W_I`, in index order.
    pub fn parabolic(&self, gens: &[usize]) -> Vec<Elem> {
        let mask: u32 = gens.iter().map(|&s| 1u32 << s).sum();
        self.elements()
            .filter(|&w| self.word(w).iter().all(|&a| mask >> a & 1 == 1))
            .collect()
    }

    /// The Coxeter system of `W_I` together with the embedding of its
    /// elements into `W`.
    pub fn parabolic_system(&self, gens: &[usize]) -> Result<(CoxeterGroup, Vec<Elem>)> {
        let sub = CoxeterGroup::new(self.matrix.restrict(gens)?)?;
        let embed = sub
            .elements()
            .map(|w| {
                let word: Vec<u8> = sub.word(w).iter().map(|&a| gens[a as usize] as u8).collect();
                self.from_word(&word)
            })
            .collect();
        Ok((sub, embed))
    }

    /// Human-readable word such as `s1s2s1`, or `1` for the identity.
    pub fn word_string(&self, w: Elem) -> String {
        if w == Elem::IDENTITY {
            return "1".into();
        }
        let mut s = String::new();
        for &a in self.word(w) {
            s.push_str(&format!("s{}", a + 1));
        }
        s
    }
}

/// Bruhat order as a dense bit matrix: `row(w) = {y : y ≤ w}`.
#[derive(Clone, Debug)]
pub struct BruhatOrder {
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BruhatOrder {
    /// Uses `{y ≤ w} = {y ≤ sw} ∪ s·{y ≤ sw}` for a left descent `s` of `w`.
    pub fn new(g: &CoxeterGroup) -> Self {
        let n = g.size();
        let wpr = n.div_ceil(64);
        let mut bits = vec![0u64; n * wpr];
        bits[0] |= 1;
        for w in g.elements().skip(1) {
            let s = g.first_descent(w).unwrap();
            let sw = g.lmul(s, w);
            let (lo, hi) = bits.split_at_mut(w.id() * wpr);
            let src = &lo[sw.id() * wpr..(sw.id() + 1) * wpr];
            let dst = &mut hi[..wpr];
            dst.copy_from_slice(src);
            for (k, &word) in src.iter().enumerate() {
                let mut word = word;
                while word != 0 {
                    let b = word.trailing_zeros() as usize;
                    word &= word - 1;
                    let y = g.lmul(s, Elem((k * 64 + b) as u32)).id();
                    dst[y / 64] |= 1 << (y % 64);
                }
            }
        }
        Self {
            words_per_row: wpr,
            bits,
        }
    }

    /// `y ≤ w`.
    pub fn leq(&self, y: Elem, w: Elem) -> bool {
        self.bits[w.id() * self.words_per_row + y.id() / 64] >> (y.id() % 64) & 1 == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_orders() {
        let cases = [
            (CoxeterMatrix::type_a(1).unwrap(), 2),
            (CoxeterMatrix::type_a(3).unwrap(), 24),
            (CoxeterMatrix::type_b(3).unwrap(), 48),
            (CoxeterMatrix::type_d(4).unwrap(), 192),
            (CoxeterMatrix::dihedral(4).unwrap(), 8),
            (CoxeterMatrix::dihedral(7).unwrap(), 14),
            (CoxeterMatrix::type_h3(), 120),
            (CoxeterMatrix::type_f4(), 1152),
        ];
        for (m, n) in cases {
            assert_eq!(CoxeterGroup::new(m).unwrap().size(), n);
        }
    }

    #[test]
    fn a1_longest() {
        let g = CoxeterGroup::new(CoxeterMatrix::type_a(1).unwrap()).unwrap();
        assert_eq!(g.longest(), g.generator(0));
        assert_eq!(g.word(g.longest()), &[0]);
    }

    #[test]
    fn dihedral_alternating_words() {
        let g = CoxeterGroup::new(CoxeterMatrix::dihedral(4).unwrap()).unwrap();
        let one = |k: usize| g.from_word(&(0..k).map(|i| (i % 2) as u8).collect::<Vec<_>>());
        let two = |k: usize| g.from_word(&(0..k).map(|i| ((i + 1) % 2) as u8).collect::<Vec<_>>());
        for k in 0..4 {
            assert_eq!(g.length(one(k)), k as u32);
            assert_ne!(one(k).id() == two(k).id(), k > 0);
        }
        assert_eq!(one(4), two(4));
        assert_eq!(one(4), g.longest());
    }

    #[test]
    fn cap_is_enforced() {
        let e = CoxeterGroup::with_cap(CoxeterMatrix::type_a(4).unwrap(), 50).unwrap_err();
        assert_eq!(e, Error::GroupTooLarge { cap: 50 });
    }

    #[test]
    fn invalid_matrices() {
        assert!(CoxeterMatrix::new(&[vec![1, 3], vec![4, 1]]).is_err());
        assert!(CoxeterMatrix::new(&[vec![1, 1], vec![1, 1]]).is_err());
        assert!(CoxeterMatrix::new(&[]).is_err());
    }

    #[test]
    fn exchange_and_inverse_laws() {
        let g = CoxeterGroup::new(CoxeterMatrix::type_b(3).unwrap()).unwrap();
        for w in g.elements() {
            let wi = g.inverse(w);
            assert_eq!(g.inverse(wi), w);
            assert_eq!(g.length(w), g.length(wi));
            assert_eq!(g.mul(w, wi), Elem::IDENTITY);
            for s in 0..g.rank() {
                let a = g.length(g.lmul(s, w)) as i64 - g.length(w) as i64;
                let b = g.length(g.rmul(w, s)) as i64 - g.length(w) as i64;
                assert_eq!(a.abs(), 1);
                assert_eq!(b.abs(), 1);
                assert_eq!(g.is_left_descent(s, w), a < 0);
            }
        }
        for x in g.elements().step_by(5) {
            for y in g.elements().step_by(7) {
                for z in g.elements().step_by(3) {
                    assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
                }
            }
        }
    }

    #[test]
    fn canonical_words_are_shortlex_minimal() {
        let g = CoxeterGroup::new(CoxeterMatrix::type_a(3).unwrap()).unwrap();
        for w in g.elements() {
            let word = g.word(w);
            assert_eq!(word.len() as u32, g.length(w));
            assert_eq!(g.from_word(word), w);
            if let Some(&a) = word.first() {
                assert_eq!(g.first_descent(w), Some(a as usize));
            }
        }
        let mut prev: Option<(u32, &[u8])> = None;
        for w in g.elements() {
            let key = (g.length(w), g.word(w));
            if let Some(p) = prev {
                assert!(p < key);
            }
            prev = Some(key);
        }
    }

    #[test]
    fn bruhat_basics() {
        let g = CoxeterGroup::new(CoxeterMatrix::dihedral(6).unwrap()).unwrap();
        let b = BruhatOrder::new(&g);
        for w in g.elements() {
            assert!(b.leq(Elem::IDENTITY, w));
            assert!(b.leq(w, g.longest()));
            for y in g.elements() {
                if b.leq(y, w) {
                    assert!(g.length(y) <= g.length(w));
                    if g.length(y) == g.length(w) {
                        assert_eq!(y, w);
                    }
                }
            }
        }
        let s1s2 = g.from_word(&[0, 1]);
        let s2s1 = g.from_word(&[1, 0]);
        assert!(!b.leq(s1s2, s2s1) && !b.leq(s2s1, s1s2));
    }

    #[test]
    fn bruhat_matches_subword_property() {
        let g = CoxeterGroup::new(CoxeterMatrix::type_a(3).unwrap()).unwrap();
        let b = BruhatOrder::new(&g);
        for w in g.elements() {
            let word = g.word(w);
            let mut below = vec![false; g.size()];
            for mask in 0u32..(1 << word.len()) {
                let sub: Vec<u8> = (0..word.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| word[i])
                    .collect();
                let y = g.from_word(&sub);
                if g.length(y) as usize == sub.len() {
                    below[y.id()] = true;
                }
            }
            for y in g.elements() {
                assert_eq!(b.leq(y, w), below[y.id()]);
            }
        }
    }

    #[test]
    fn parabolics() {
        let g = CoxeterGroup::new(CoxeterMatrix::dihedral(5).unwrap()).unwrap();
        assert_eq!(g.parabolic(&[]), vec![Elem::IDENTITY]);
        assert_eq!(g.parabolic(&[0, 1]).len(), 10);
        assert_eq!(g.parabolic(&[0]), vec![Elem::IDENTITY, g.generator(0)]);
        let h = CoxeterGroup::new(CoxeterMatrix::type_b(3).unwrap()).unwrap();
        let (sub, emb) = h.parabolic_system(&[1, 2]).unwrap();
        assert_eq!(sub.size(), 6);
        let mut sorted = emb.clone();
        sorted.sort();
        assert_eq!(sorted, h.parabolic(&[1, 2]));
    }

    #[test]
    fn generator_conjugacy() {
        assert_eq!(CoxeterMatrix::type_b(3).unwrap().generator_classes(), vec![0, 1, 1]);
        assert_eq!(CoxeterMatrix::type_f4().generator_classes(), vec![0, 0, 1, 1]);
        assert_eq!(CoxeterMatrix::dihedral(5).unwrap().generator_classes(), vec![0, 0]);
        assert_eq!(CoxeterMatrix::dihedral(6).unwrap().generator_classes(), vec![0, 1]);
    }
}
