//! Materialized finite permutation groups.
//!
//! Every group carries its full multiplication table, so elements are plain
//! indices (`Elem`) into that table. Index `0` is always the identity.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use rand::Rng;

use crate::error::{Error, Result};
use crate::perm::Perm;

pub type Elem = u32;

/// Hard cap on materialized group orders; the multiplication table is quadratic.
pub const MAX_ORDER: usize = 2048;

pub struct Group {
    name: String,
    degree: usize,
    elems: Vec<Perm>,
    index: HashMap<Perm, Elem>,
    mul: Vec<Elem>,
    inv: Vec<Elem>,
    orders: Vec<u32>,
    gens: Vec<Elem>,
    factors: Option<(Arc<Group>, Arc<Group>)>,
}

pub type GroupRef = Arc<Group>;

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[order {}]", self.name, self.order())
    }
}

impl Group {
    /// Builds the group generated by `gens` on `degree` points.
    pub fn from_generators(name: &str, degree: usize, gens: Vec<Perm>) -> Result<GroupRef> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "{g:?} has degree {} but group degree is {degree}",
                    g.degree()
                )));
            }
        }
        let gens: Vec<Perm> = gens.into_iter().filter(|g| !g.is_identity()).collect();
        let id = Perm::identity(degree);
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Perm, Elem> = HashMap::new();
        index.insert(id, 0);
        // right multiplication by generators, filled during the orbit walk
        let mut right: Vec<Vec<Elem>> = Vec::new();
        let mut parent: Vec<(Elem, usize)> = vec![(0, usize::MAX)];
        let mut head = 0;
        while head < elems.len() {
            let mut row = Vec::with_capacity(gens.len());
            for (k, s) in gens.iter().enumerate() {
                let y = elems[head].compose(s);
                let idx = match index.get(&y) {
                    Some(&i) => i,
                    None => {
                        let i = elems.len() as Elem;
                        if elems.len() >= MAX_ORDER {
                            return Err(Error::GroupTooLarge(elems.len() + 1));
                        }
                        index.insert(y.clone(), i);
                        elems.push(y);
                        parent.push((head as Elem, k));
                        i
                    }
                };
                row.push(idx);
            }
            right.push(row);
            head += 1;
        }
        let n = elems.len();
        let mut mul = vec![0 as Elem; n * n];
        for a in 0..n {
            mul[a * n] = a as Elem;
        }
        // column b = parent(b) * s, so a*b = (a*parent(b))*s
        for b in 1..n {
            let (pb, k) = parent[b];
            for a in 0..n {
                let t = mul[a * n + pb as usize] as usize;
                mul[a * n + b] = right[t][k];
            }
        }
        let mut inv = vec![0 as Elem; n];
        for a in 0..n {
            for b in 0..n {
                if mul[a * n + b] == 0 {
                    inv[a] = b as Elem;
                    break;
                }
            }
        }
        let mut orders = vec![1u32; n];
        for (a, o) in orders.iter_mut().enumerate() {
            let mut x = a;
            let mut k = 1;
            while x != 0 {
                x = mul[x * n + a] as usize;
                k += 1;
            }
            *o = k;
        }
        let gen_idx = gens.iter().map(|g| index[g]).collect();
        Ok(Arc::new(Group {
            name: name.to_string(),
            degree,
            elems,
            index,
            mul,
            inv,
            orders,
            gens: gen_idx,
            factors: None,
        }))
    }

    pub fn trivial() -> GroupRef {
        Group::from_generators("1", 1, vec![]).expect("trivial group")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn generators(&self) -> &[Elem] {
        &self.gens
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.elems.len() + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a as usize]
    }

    /// `g x g^{-1}`.
    #[inline]
    pub fn conj(&self, g: Elem, x: Elem) -> Elem {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, a: Elem, k: i64) -> Elem {
        let o = self.elem_order(a) as i64;
        let e = k.rem_euclid(o);
        let mut r = 0;
        for _ in 0..e {
            r = self.mul(r, a);
        }
        r
    }

    pub fn elem_order(&self, a: Elem) -> u32 {
        self.orders[a as usize]
    }

    pub fn perm(&self, a: Elem) -> &Perm {
        &self.elems[a as usize]
    }

    pub fn index_of(&self, p: &Perm) -> Option<Elem> {
        self.index.get(p).copied()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.elems.len() as Elem
    }

    pub fn exponent(&self) -> u64 {
        self.orders
            .iter()
            .fold(1u64, |acc, &o| num_integer::lcm(acc, o as u64))
    }

    /// Splits `g` as `u s = s u` with `u` of `p`-power order and `s` of `p'`-order.
    pub fn p_part_decomposition(&self, g: Elem, p: u64) -> (Elem, Elem) {
        let n = self.elem_order(g) as u64;
        let mut pa = 1u64;
        while n % (pa * p) == 0 {
            pa *= p;
        }
        let m = n / pa;
        // e ≡ 1 mod pa, e ≡ 0 mod m
        let mut e = 0u64;
        for t in 0..pa.max(1) {
            let c = t * m;
            if c % pa == 1 % pa {
                e = c;
                break;
            }
        }
        let u = self.pow(g, e as i64);
        let s = self.mul(self.inv(u), g);
        (u, s)
    }

    pub fn is_p_element(&self, g: Elem, p: u64) -> bool {
        let mut o = self.elem_order(g) as u64;
        while o % p == 0 {
            o /= p;
        }
        o == 1
    }

    pub fn is_p_regular(&self, g: Elem, p: u64) -> bool {
        self.elem_order(g) as u64 % p != 0
    }

    pub fn whole(self: &Arc<Self>) -> Subgroup {
        Subgroup::from_sorted_unchecked(
            self.clone(),
            (0..self.order() as Elem).collect(),
            Some(self.gens.clone()),
        )
    }

    pub fn trivial_subgroup(self: &Arc<Self>) -> Subgroup {
        Subgroup::from_sorted_unchecked(self.clone(), vec![0], Some(vec![]))
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Elem {
        rng.gen_range(0..self.order() as Elem)
    }

    /// Direct product `G × H` acting on the disjoint union of the point sets.
    /// Element `(g, h)` has index `g * |H| + h`.
    pub fn direct_product(g: &GroupRef, h: &GroupRef) -> Result<GroupRef> {
        let (ng, nh) = (g.order(), h.order());
        let n = ng * nh;
        if n > MAX_ORDER {
            return Err(Error::GroupTooLarge(n));
        }
        let mut elems = Vec::with_capacity(n);
        let mut index = HashMap::with_capacity(n);
        for a in 0..ng {
            for b in 0..nh {
                let p = g.elems[a].disjoint_union(&h.elems[b]);
                index.insert(p.clone(), (a * nh + b) as Elem);
                elems.push(p);
            }
        }
        let mut mul = vec![0 as Elem; n * n];
        for x in 0..n {
            let (xa, xb) = (x / nh, x % nh);
            for y in 0..n {
                let (ya, yb) = (y / nh, y % nh);
                mul[x * n + y] =
                    g.mul(xa as Elem, ya as Elem) * nh as Elem + h.mul(xb as Elem, yb as Elem);
            }
        }
        let inv = (0..n)
            .map(|x| g.inv((x / nh) as Elem) * nh as Elem + h.inv((x % nh) as Elem))
            .collect();
        let orders = (0..n)
            .map(|x| {
                num_integer::lcm(
                    g.elem_order((x / nh) as Elem),
                    h.elem_order((x % nh) as Elem),
                )
            })
            .collect();
        let mut gens: Vec<Elem> = g.gens.iter().map(|&a| a * nh as Elem).collect();
        gens.extend(h.gens.iter().copied());
        Ok(Arc::new(Group {
            name: format!("{}x{}", g.name, h.name),
            degree: g.degree + h.degree,
            elems,
            index,
            mul,
            inv,
            orders,
            gens,
            factors: Some((g.clone(), h.clone())),
        }))
    }

    pub fn factors(&self) -> Option<(&GroupRef, &GroupRef)> {
        self.factors.as_ref().map(|(a, b)| (a, b))
    }

    /// `(g, h)` as an element of a direct product.
    pub fn pair(&self, g: Elem, h: Elem) -> Elem {
        let (_, hh) = self.factors().expect("direct product");
        g * hh.order() as Elem + h
    }

    pub fn split(&self, x: Elem) -> (Elem, Elem) {
        let (_, hh) = self.factors().expect("direct product");
        let nh = hh.order() as Elem;
        (x / nh, x % nh)
    }

    /// Catalog groups in small faithful permutation actions.
    pub fn catalog(name: &str) -> Result<GroupRef> {
        let bad = || Error::UnknownCatalog(name.to_string());
        let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
        let g = match name {
            "1" | "C1" | "trivial" => Group::trivial(),
            "V4" | "K4" | "Klein4" | "C2xC2" => {
                let a = Perm::from_cycles(4, &[vec![0, 1], vec![2, 3]])?;
                let b = Perm::from_cycles(4, &[vec![0, 2], vec![1, 3]])?;
                Group::from_generators("V4", 4, vec![a, b])?
            }
            "Q8" => {
                let i = Perm::from_cycles(8, &[vec![0, 1, 3, 6], vec![2, 5, 7, 4]])?;
                let j = Perm::from_cycles(8, &[vec![0, 2, 3, 7], vec![1, 4, 6, 5]])?;
                Group::from_generators("Q8", 8, vec![i, j])?
            }
            _ if name.starts_with('C') => cyclic(num(&name[1..])?)?,
            _ if name.starts_with('D') => {
                let n = num(&name[1..])?;
                if n < 4 || n % 2 == 1 {
                    return Err(bad());
                }
                dihedral(n / 2)?
            }
            _ if name.starts_with('S') => symmetric(num(&name[1..])?)?,
            _ if name.starts_with('A') => alternating(num(&name[1..])?)?,
            _ if name.starts_with('E') => {
                let (p, r) = name[1..].split_once('^').ok_or_else(bad)?;
                elementary_abelian(num(p)?, num(r)?)?
            }
            _ => return Err(bad()),
        };
        let mut g = Arc::try_unwrap(g).unwrap_or_else(|_| unreachable!());
        g.name = name.to_string();
        Ok(Arc::new(g))
    }
}

fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn cyclic(n: usize) -> Result<GroupRef> {
    if n == 0 {
        return Err(Error::UnknownCatalog("C0".into()));
    }
    if n == 1 {
        return Ok(Group::trivial());
    }
    let parts: Vec<usize> = factorize(n).iter().map(|&(p, e)| p.pow(e)).collect();
    let deg: usize = parts.iter().sum();
    let mut cycles = Vec::new();
    let mut start = 0;
    for l in parts {
        cycles.push((start..start + l).collect());
        start += l;
    }
    Group::from_generators(&format!("C{n}"), deg, vec![Perm::from_cycles(deg, &cycles)?])
}

fn dihedral(n: usize) -> Result<GroupRef> {
    if n == 2 {
        return Group::catalog("V4");
    }
    let r = Perm::from_images((0..n).map(|i| (i + 1) % n).collect())?;
    let s = Perm::from_images((0..n).map(|i| (n - i) % n).collect())?;
    Group::from_generators(&format!("D{}", 2 * n), n, vec![r, s])
}

fn symmetric(n: usize) -> Result<GroupRef> {
    if n <= 1 {
        return Ok(Group::trivial());
    }
    let t = Perm::from_cycles(n, &[vec![0, 1]])?;
    let c = Perm::from_images((0..n).map(|i| (i + 1) % n).collect())?;
    Group::from_generators(&format!("S{n}"), n, vec![c, t])
}

fn alternating(n: usize) -> Result<GroupRef> {
    if n <= 2 {
        return Ok(Group::trivial());
    }
    let gens = (2..n)
        .map(|k| Perm::from_cycles(n, &[vec![0, 1, k]]))
        .collect::<Result<Vec<_>>>()?;
    Group::from_generators(&format!("A{n}"), n, gens)
}

fn elementary_abelian(p: usize, r: usize) -> Result<GroupRef> {
    let deg = (p * r).max(1);
    let gens = (0..r)
        .map(|i| Perm::from_cycles(deg, &[(i * p..(i + 1) * p).collect()]))
        .collect::<Result<Vec<_>>>()?;
    Group::from_generators(&format!("E{p}^{r}"), deg, gens)
}

#[derive(Clone, Debug)]
pub struct ConjClass {
    pub rep: Elem,
    pub members: Vec<Elem>,
}

impl ConjClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

struct SubData {
    ambient: GroupRef,
    elems: Vec<Elem>,
    mask: Vec<u64>,
    gens: Vec<Elem>,
    classes: OnceLock<(Vec<ConjClass>, HashMap<Elem, usize>)>,
    tree: OnceLock<Vec<(Elem, usize)>>,
}

/// A subgroup of a materialized group, identified by its element set.
#[derive(Clone)]
pub struct Subgroup(Arc<SubData>);

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0.ambient, &other.0.ambient) && self.0.elems == other.0.elems
    }
}
impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.elems.hash(state);
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    /// Order, then lexicographic element list.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.order(), &self.0.elems).cmp(&(other.order(), &other.0.elems))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.0.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", self.0.ambient.perm(*g))?;
        }
        write!(f, "> of order {}", self.order())
    }
}

fn mask_of(n: usize, elems: &[Elem]) -> Vec<u64> {
    let mut m = vec![0u64; n.div_ceil(64)];
    for &x in elems {
        m[x as usize / 64] |= 1 << (x % 64);
    }
    m
}

fn closure(amb: &Group, gens: &[Elem]) -> Vec<Elem> {
    let n = amb.order();
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut out = vec![0];
    let mut head = 0;
    while head < out.len() {
        let x = out[head];
        for &s in gens {
            let y = amb.mul(x, s);
            if !seen[y as usize] {
                seen[y as usize] = true;
                out.push(y);
            }
        }
        head += 1;
    }
    out.sort_unstable();
    out
}

impl Subgroup {
    fn from_sorted_unchecked(amb: GroupRef, elems: Vec<Elem>, gens: Option<Vec<Elem>>) -> Subgroup {
        let mask = mask_of(amb.order(), &elems);
        let gens = match gens {
            Some(g) => g,
            None => greedy_generators(&amb, &elems),
        };
        Subgroup(Arc::new(SubData {
            ambient: amb,
            elems,
            mask,
            gens,
            classes: OnceLock::new(),
            tree: OnceLock::new(),
        }))
    }

    pub fn generated(amb: &GroupRef, gens: &[Elem]) -> Subgroup {
        let gens: Vec<Elem> = gens.iter().copied().filter(|&g| g != 0).collect();
        let elems = closure(amb, &gens);
        let mut uniq = Vec::new();
        for g in gens {
            if !uniq.contains(&g) {
                uniq.push(g);
            }
        }
        Subgroup::from_sorted_unchecked(amb.clone(), elems, Some(uniq))
    }

    /// Builds a subgroup from an element set, verifying closure.
    pub fn from_elements(amb: &GroupRef, elems: &[Elem]) -> Result<Subgroup> {
        let mut e: Vec<Elem> = elems.to_vec();
        e.sort_unstable();
        e.dedup();
        let mask = mask_of(amb.order(), &e);
        let has = |x: Elem| mask[x as usize / 64] >> (x % 64) & 1 == 1;
        if !has(0) || e.iter().any(|&a| e.iter().any(|&b| !has(amb.mul(a, b)))) {
            return Err(Error::Precondition("element set is not a subgroup".into()));
        }
        Ok(Subgroup::from_sorted_unchecked(amb.clone(), e, None))
    }

    pub(crate) fn from_closed_set(amb: &GroupRef, mut elems: Vec<Elem>) -> Subgroup {
        elems.sort_unstable();
        elems.dedup();
        Subgroup::from_sorted_unchecked(amb.clone(), elems, None)
    }

    pub fn ambient(&self) -> &GroupRef {
        &self.0.ambient
    }

    pub fn elements(&self) -> &[Elem] {
        &self.0.elems
    }

    pub fn generators(&self) -> &[Elem] {
        &self.0.gens
    }

    pub fn order(&self) -> usize {
        self.0.elems.len()
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.0.mask[x as usize / 64] >> (x % 64) & 1 == 1
    }

    pub fn position(&self, x: Elem) -> Option<usize> {
        self.0.elems.binary_search(&x).ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.0.gens.iter().all(|&g| other.contains(g))
    }

    fn same_ambient(&self, other: &Subgroup) -> Result<()> {
        if Arc::ptr_eq(&self.0.ambient, &other.0.ambient) {
            Ok(())
        } else {
            Err(Error::Mismatch("subgroups of different ambient groups".into()))
        }
    }

    fn require_in(&self, other: &Subgroup) -> Result<()> {
        self.same_ambient(other)?;
        if self.is_subgroup_of(other) {
            Ok(())
        } else {
            Err(Error::NotContained(format!("{self:?} in {other:?}")))
        }
    }

    pub fn is_normal_in(&self, other: &Subgroup) -> bool {
        let g = self.ambient();
        other
            .generators()
            .iter()
            .all(|&x| self.0.gens.iter().all(|&s| self.contains(g.conj(x, s))))
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.ambient();
        let gs = self.generators();
        gs.iter()
            .all(|&a| gs.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        let mut n = self.order() as u64;
        while n % p == 0 {
            n /= p;
        }
        n == 1
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let elems = self
            .0
            .elems
            .iter()
            .copied()
            .filter(|&x| other.contains(x))
            .collect();
        Subgroup::from_sorted_unchecked(self.0.ambient.clone(), elems, None)
    }

    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let mut gens = self.0.gens.clone();
        gens.extend(other.0.gens.iter().copied().filter(|&g| !self.contains(g)));
        Subgroup::generated(&self.0.ambient, &gens)
    }

    /// `^g S = g S g^{-1}`.
    pub fn conjugate(&self, g: Elem) -> Subgroup {
        let a = self.ambient();
        let elems = self.0.elems.iter().map(|&x| a.conj(g, x)).collect::<Vec<_>>();
        let gens = self.0.gens.iter().map(|&x| a.conj(g, x)).collect();
        let mut e = elems;
        e.sort_unstable();
        Subgroup::from_sorted_unchecked(a.clone(), e, Some(gens))
    }

    /// `C_self(S)`.
    pub fn centralizer(&self, s: &Subgroup) -> Result<Subgroup> {
        self.same_ambient(s)?;
        Ok(self.centralizer_of_gens(s.generators()))
    }

    pub fn centralizer_of_gens(&self, gens: &[Elem]) -> Subgroup {
        let a = self.ambient();
        let elems = self
            .0
            .elems
            .iter()
            .copied()
            .filter(|&g| gens.iter().all(|&s| a.mul(g, s) == a.mul(s, g)))
            .collect();
        Subgroup::from_sorted_unchecked(a.clone(), elems, None)
    }

    /// `N_self(S)`.
    pub fn normalizer(&self, s: &Subgroup) -> Result<Subgroup> {
        self.same_ambient(s)?;
        let a = self.ambient();
        let elems = self
            .0
            .elems
            .iter()
            .copied()
            .filter(|&g| s.generators().iter().all(|&x| s.contains(a.conj(g, x))))
            .collect();
        Ok(Subgroup::from_sorted_unchecked(a.clone(), elems, None))
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer_of_gens(&self.0.gens.clone())
    }

    /// Centralizer in `self` of `S`, erroring unless `S ≤ self` (the ambient-facing contract).
    pub fn centralizer_of_subgroup(&self, s: &Subgroup) -> Result<Subgroup> {
        s.require_in(self)?;
        self.centralizer(s)
    }

    pub fn normalizer_of_subgroup(&self, s: &Subgroup) -> Result<Subgroup> {
        s.require_in(self)?;
        self.normalizer(s)
    }

    /// Spanning tree of the Cayley graph on the subgroup's generators:
    /// entry `i` is `(parent element, generator index)` with `elems[i] = parent * gen`.
    pub fn schreier_tree(&self) -> &[(Elem, usize)] {
        self.0.tree.get_or_init(|| {
            let a = self.ambient();
            let mut par: HashMap<Elem, (Elem, usize)> = HashMap::new();
            par.insert(0, (0, usize::MAX));
            let mut q = VecDeque::from([0 as Elem]);
            while let Some(x) = q.pop_front() {
                for (k, &s) in self.0.gens.iter().enumerate() {
                    let y = a.mul(x, s);
                    if let std::collections::hash_map::Entry::Vacant(e) = par.entry(y) {
                        e.insert((x, k));
                        q.push_back(y);
                    }
                }
            }
            self.0.elems.iter().map(|x| par[x]).collect()
        })
    }

    /// Elements in an order where each non-identity element follows its tree parent.
    pub fn bfs_order(&self) -> Vec<Elem> {
        let a = self.ambient();
        let mut out = vec![0 as Elem];
        let mut seen: HashSet<Elem> = HashSet::from([0]);
        let mut head = 0;
        while head < out.len() {
            let x = out[head];
            for &s in &self.0.gens {
                let y = a.mul(x, s);
                if seen.insert(y) {
                    out.push(y);
                }
            }
            head += 1;
        }
        out
    }

    fn class_data(&self) -> &(Vec<ConjClass>, HashMap<Elem, usize>) {
        self.0.classes.get_or_init(|| {
            let a = self.ambient();
            let mut idx: HashMap<Elem, usize> = HashMap::new();
            let mut classes = Vec::new();
            for &x in &self.0.elems {
                if idx.contains_key(&x) {
                    continue;
                }
                let mut members = vec![x];
                let mut head = 0;
                idx.insert(x, classes.len());
                while head < members.len() {
                    let y = members[head];
                    for &g in &self.0.gens {
                        let z = a.conj(g, y);
                        if let std::collections::hash_map::Entry::Vacant(e) = idx.entry(z) {
                            e.insert(classes.len());
                            members.push(z);
                        }
                    }
                    head += 1;
                }
                members.sort_unstable();
                classes.push(ConjClass { rep: x, members });
            }
            (classes, idx)
        })
    }

    /// Conjugacy classes, the identity class first, ordered by least element.
    pub fn conjugacy_classes(&self) -> &[ConjClass] {
        &self.class_data().0
    }

    pub fn class_index(&self, x: Elem) -> usize {
        self.class_data().1[&x]
    }

    pub fn p_regular_classes(&self, p: u64) -> Vec<usize> {
        let a = self.ambient();
        self.conjugacy_classes()
            .iter()
            .enumerate()
            .filter(|(_, c)| a.is_p_regular(c.rep, p))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn exponent(&self) -> u64 {
        let a = self.ambient();
        self.0
            .elems
            .iter()
            .fold(1, |acc, &x| num_integer::lcm(acc, a.elem_order(x) as u64))
    }

    pub fn p_part_of_order(&self, p: u64) -> usize {
        let mut n = self.order();
        let mut pp = 1;
        while n % p as usize == 0 {
            n /= p as usize;
            pp *= p as usize;
        }
        pp
    }

    /// Left transversal of `k` in `self`: `self = ⊔ r k`, least element per coset.
    pub fn left_transversal(&self, k: &Subgroup) -> Result<Vec<Elem>> {
        k.require_in(self)?;
        let a = self.ambient();
        let mut seen = vec![false; a.order()];
        let mut reps = Vec::new();
        for &x in &self.0.elems {
            if seen[x as usize] {
                continue;
            }
            reps.push(x);
            for &y in k.elements() {
                seen[a.mul(x, y) as usize] = true;
            }
        }
        Ok(reps)
    }

    /// Representatives `t` of the double cosets `k1 \ self / k2`.
    pub fn double_coset_reps(&self, k1: &Subgroup, k2: &Subgroup) -> Result<Vec<Elem>> {
        k1.require_in(self)?;
        k2.require_in(self)?;
        let a = self.ambient();
        let mut seen = vec![false; a.order()];
        let mut reps = Vec::new();
        for &x in &self.0.elems {
            if seen[x as usize] {
                continue;
            }
            reps.push(x);
            for &u in k1.elements() {
                let ux = a.mul(u, x);
                for &v in k2.elements() {
                    seen[a.mul(ux, v) as usize] = true;
                }
            }
        }
        Ok(reps)
    }

    /// Some `g ∈ self` with `^g a = b`.
    pub fn conjugacy_witness(&self, a: &Subgroup, b: &Subgroup) -> Option<Elem> {
        if a.order() != b.order() {
            return None;
        }
        let amb = self.ambient();
        self.0.elems.iter().copied().find(|&g| {
            a.generators().iter().all(|&x| b.contains(amb.conj(g, x)))
        })
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Elem {
        self.0.elems[rng.gen_range(0..self.order())]
    }

    /// A Sylow `p`-subgroup, grown greedily inside normalizers.
    pub fn sylow(&self, p: u64) -> Subgroup {
        let target = self.p_part_of_order(p);
        let a = self.ambient().clone();
        let mut cur = a.trivial_subgroup();
        while cur.order() < target {
            let n = self.normalizer(&cur).expect("same ambient");
            let g = n
                .elements()
                .iter()
                .copied()
                .find(|&g| {
                    !cur.contains(g) && a.is_p_element(g, p) && cur.contains(a.pow(g, p as i64))
                })
                .expect("a p-subgroup that is not Sylow extends in its normalizer");
            let mut gens = cur.generators().to_vec();
            gens.push(g);
            cur = Subgroup::generated(&a, &gens);
        }
        cur
    }

    fn p_extensions(&self, k: &Subgroup, p: u64) -> Vec<Subgroup> {
        let a = self.ambient();
        let n = self.normalizer(k).expect("same ambient");
        let mut out: Vec<Subgroup> = Vec::new();
        let mut seen: HashSet<Vec<Elem>> = HashSet::new();
        for &g in n.elements() {
            if k.contains(g) || !a.is_p_element(g, p) || !k.contains(a.pow(g, p as i64)) {
                continue;
            }
            let mut gens = k.generators().to_vec();
            gens.push(g);
            let s = Subgroup::generated(a, &gens);
            if seen.insert(s.elements().to_vec()) {
                out.push(s);
            }
        }
        out
    }

    /// One representative per conjugacy class of `p`-subgroups of `self`,
    /// sorted by order and then by element list.
    pub fn p_subgroups_up_to_conjugacy(&self, p: u64) -> Vec<Subgroup> {
        let a = self.ambient().clone();
        let mut level = vec![a.trivial_subgroup()];
        let mut all = level.clone();
        loop {
            let mut seen: HashSet<Vec<Elem>> = HashSet::new();
            let mut next = Vec::new();
            for k in &level {
                for s in self.p_extensions(k, p) {
                    if seen.contains(s.elements()) {
                        continue;
                    }
                    for &g in self.elements() {
                        let c = s.conjugate(g);
                        seen.insert(c.elements().to_vec());
                    }
                    next.push(s);
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort();
            all.extend(next.iter().cloned());
            level = next;
        }
        all
    }

    /// Every subgroup of `self`; requires `self` to be a `p`-group.
    pub fn all_subgroups_of_p_group(&self, p: u64) -> Result<Vec<Subgroup>> {
        if !self.is_p_group(p) {
            return Err(Error::NotPGroup(format!("{self:?}")));
        }
        let a = self.ambient().clone();
        let mut level = vec![a.trivial_subgroup()];
        let mut all = level.clone();
        loop {
            let mut seen: HashSet<Vec<Elem>> = HashSet::new();
            let mut next = Vec::new();
            for k in &level {
                for s in self.p_extensions(k, p) {
                    if seen.insert(s.elements().to_vec()) {
                        next.push(s);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort();
            all.extend(next.iter().cloned());
            level = next;
        }
        Ok(all)
    }

    /// All `p`-subgroups of `self` (no conjugacy reduction).
    pub fn all_p_subgroups(&self, p: u64) -> Vec<Subgroup> {
        let mut out: Vec<Subgroup> = Vec::new();
        let mut seen: HashSet<Vec<Elem>> = HashSet::new();
        for r in self.p_subgroups_up_to_conjugacy(p) {
            for &g in self.elements() {
                let c = r.conjugate(g);
                if seen.insert(c.elements().to_vec()) {
                    out.push(c);
                }
            }
        }
        out.sort();
        out
    }
}

/// A short generating set: repeatedly add the largest-order element not yet covered.
fn greedy_generators(amb: &Group, elems: &[Elem]) -> Vec<Elem> {
    let mut cands: Vec<Elem> = elems.iter().copied().filter(|&x| x != 0).collect();
    cands.sort_by_key(|&x| (std::cmp::Reverse(amb.elem_order(x)), x));
    let mut gens = Vec::new();
    let mut cur: HashSet<Elem> = HashSet::from([0]);
    for x in cands {
        if cur.len() == elems.len() {
            break;
        }
        if cur.contains(&x) {
            continue;
        }
        gens.push(x);
        cur = closure(amb, &gens).into_iter().collect();
    }
    gens
}

/// A homomorphism between subgroups, stored as an image per source element.
#[derive(Clone)]
pub struct GroupHom {
    source: Subgroup,
    target: Subgroup,
    images: Vec<Elem>,
}

impl PartialEq for GroupHom {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.images == other.images
    }
}
impl Eq for GroupHom {}

impl Hash for GroupHom {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.source.hash(state);
        self.images.hash(state);
    }
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "hom {:?} -> {:?}: [", self.source, self.target)?;
        let tg = self.target.ambient();
        for (i, &g) in self.source.generators().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", tg.perm(self.apply(g)))?;
        }
        write!(f, "]")
    }
}

impl GroupHom {
    /// Extends generator images along the Schreier tree and checks every Cayley edge.
    pub fn from_generator_images(
        source: &Subgroup,
        target: &Subgroup,
        gen_images: &[Elem],
    ) -> Result<GroupHom> {
        if gen_images.len() != source.generators().len() {
            return Err(Error::NotHomomorphism("wrong number of generator images".into()));
        }
        if let Some(&bad) = gen_images.iter().find(|&&g| !target.contains(g)) {
            return Err(Error::NotContained(format!("image {bad} outside target")));
        }
        let sa = source.ambient();
        let ta = target.ambient();
        let tree = source.schreier_tree();
        let mut img: HashMap<Elem, Elem> = HashMap::from([(0, 0)]);
        for x in source.bfs_order().into_iter().skip(1) {
            let (par, k) = tree[source.position(x).expect("member")];
            img.insert(x, ta.mul(img[&par], gen_images[k]));
        }
        for &x in source.elements() {
            for (k, &s) in source.generators().iter().enumerate() {
                if img[&sa.mul(x, s)] != ta.mul(img[&x], gen_images[k]) {
                    return Err(Error::NotHomomorphism(format!(
                        "relation fails at element {x} and generator {k}"
                    )));
                }
            }
        }
        let images = source.elements().iter().map(|x| img[x]).collect();
        Ok(GroupHom { source: source.clone(), target: target.clone(), images })
    }

    /// Builds a map from an arbitrary function, verifying multiplicativity exhaustively.
    pub fn from_fn(source: &Subgroup, target: &Subgroup, f: impl Fn(Elem) -> Elem) -> Result<GroupHom> {
        let gi: Vec<Elem> = source.generators().iter().map(|&g| f(g)).collect();
        let h = GroupHom::from_generator_images(source, target, &gi)?;
        for &x in source.elements() {
            if h.apply(x) != f(x) {
                return Err(Error::NotHomomorphism(format!("function disagrees at {x}")));
            }
        }
        Ok(h)
    }

    pub fn identity(s: &Subgroup) -> GroupHom {
        GroupHom { source: s.clone(), target: s.clone(), images: s.elements().to_vec() }
    }

    /// Conjugation `c_g: S -> ^g S`, `x ↦ g x g^{-1}`.
    pub fn conjugation(s: &Subgroup, g: Elem) -> GroupHom {
        let a = s.ambient();
        let target = s.conjugate(g);
        let images = s.elements().iter().map(|&x| a.conj(g, x)).collect();
        GroupHom { source: s.clone(), target, images }
    }

    pub fn source(&self) -> &Subgroup {
        &self.source
    }

    pub fn target(&self) -> &Subgroup {
        &self.target
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.images[self.source.position(x).expect("element of source")]
    }

    pub fn generator_images(&self) -> Vec<Elem> {
        self.source.generators().iter().map(|&g| self.apply(g)).collect()
    }

    pub fn image(&self) -> Subgroup {
        Subgroup::from_closed_set(self.target.ambient(), self.images.clone())
    }

    pub fn kernel(&self) -> Subgroup {
        let elems = self
            .source
            .elements()
            .iter()
            .zip(&self.images)
            .filter(|(_, &y)| y == 0)
            .map(|(&x, _)| x)
            .collect();
        Subgroup::from_closed_set(self.source.ambient(), elems)
    }

    pub fn is_injective(&self) -> bool {
        self.images.iter().filter(|&&y| y == 0).count() == 1
    }

    pub fn is_surjective(&self) -> bool {
        self.image().order() == self.target.order()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.source.order() == self.target.order()
    }

    /// Same map with a new codomain containing the image.
    pub fn with_target(&self, target: &Subgroup) -> Result<GroupHom> {
        if let Some(&bad) = self.images.iter().find(|&&y| !target.contains(y)) {
            return Err(Error::NotContained(format!("image {bad} outside new target")));
        }
        Ok(GroupHom { source: self.source.clone(), target: target.clone(), images: self.images.clone() })
    }

    /// Corestriction to the image.
    pub fn onto_image(&self) -> GroupHom {
        let t = self.image();
        GroupHom { source: self.source.clone(), target: t, images: self.images.clone() }
    }

    pub fn restrict(&self, s: &Subgroup) -> Result<GroupHom> {
        s.require_in(&self.source)?;
        let images = s.elements().iter().map(|&x| self.apply(x)).collect();
        Ok(GroupHom { source: s.clone(), target: self.target.clone(), images })
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GroupHom) -> Result<GroupHom> {
        if !Arc::ptr_eq(other.target.ambient(), self.source.ambient())
            || !other.image().is_subgroup_of(&self.source)
        {
            return Err(Error::Mismatch("composition domains".into()));
        }
        let images = other.images.iter().map(|&y| self.apply(y)).collect();
        Ok(GroupHom { source: other.source.clone(), target: self.target.clone(), images })
    }

    pub fn inverse(&self) -> Result<GroupHom> {
        if !self.is_isomorphism() {
            return Err(Error::Precondition("map is not bijective".into()));
        }
        let mut pairs: Vec<(Elem, Elem)> =
            self.source.elements().iter().zip(&self.images).map(|(&x, &y)| (y, x)).collect();
        pairs.sort_unstable();
        Ok(GroupHom {
            source: self.target.clone(),
            target: self.source.clone(),
            images: pairs.into_iter().map(|(_, x)| x).collect(),
        })
    }

    /// Pairs `(x, φ(x))` in source order.
    pub fn graph(&self) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        self.source.elements().iter().copied().zip(self.images.iter().copied())
    }
}

/// `S` as a group in its own right, with the isomorphism onto `S`.
pub fn standalone(s: &Subgroup, name: &str) -> Result<(GroupRef, GroupHom)> {
    let a = s.ambient();
    let gens: Vec<Perm> = s.generators().iter().map(|&x| a.perm(x).clone()).collect();
    let g = Group::from_generators(name, a.degree(), gens)?;
    let iso = GroupHom::from_fn(&g.whole(), s, |x| a.index_of(g.perm(x)).expect("same permutations"))?;
    Ok((g, iso))
}

/// `S/N` realized as the permutation group on the left cosets of `N`, with the projection.
pub fn quotient_group(s: &Subgroup, n: &Subgroup) -> Result<(GroupRef, GroupHom)> {
    if !n.is_subgroup_of(s) || !n.is_normal_in(s) {
        return Err(Error::Precondition("N must be a normal subgroup of S".into()));
    }
    let a = s.ambient();
    let reps = s.left_transversal(n)?;
    let mut coset = HashMap::new();
    for (i, &r) in reps.iter().enumerate() {
        for &y in n.elements() {
            coset.insert(a.mul(r, y), i);
        }
    }
    let act = |x: Elem| -> Perm {
        Perm::from_images(reps.iter().map(|&r| coset[&a.mul(x, r)]).collect()).expect("coset action")
    };
    let deg = reps.len();
    let gens: Vec<Perm> = s.generators().iter().map(|&x| act(x)).collect();
    let q = Group::from_generators(&format!("{}/{}", s.order(), n.order()), deg, gens)?;
    let qw = q.whole();
    let pi = GroupHom::from_fn(s, &qw, |x| q.index_of(&act(x)).expect("image in quotient"))?;
    Ok((q, pi))
}

/// Generators of the Frattini subgroup `P' P^p` of a `p`-group.
pub fn frattini(p_grp: &Subgroup, p: u64) -> Subgroup {
    let a = p_grp.ambient();
    let mut gens = Vec::new();
    for &x in p_grp.elements() {
        gens.push(a.pow(x, p as i64));
        for &y in p_grp.generators() {
            gens.push(a.mul(a.mul(x, y), a.mul(a.inv(x), a.inv(y))));
        }
    }
    Subgroup::generated(a, &gens)
}

/// The maximal subgroups of a nontrivial `p`-group (index `p`, containing the Frattini subgroup).
pub fn maximal_subgroups_of_p_group(pg: &Subgroup, p: u64) -> Vec<Subgroup> {
    let a = pg.ambient();
    let phi = frattini(pg, p);
    // basis of P/Φ(P)
    let mut basis: Vec<Elem> = Vec::new();
    let mut span = phi.clone();
    for &x in pg.elements() {
        if !span.contains(x) {
            basis.push(x);
            let mut g = span.generators().to_vec();
            g.push(x);
            span = Subgroup::generated(a, &g);
        }
    }
    let r = basis.len();
    let mut out: Vec<Subgroup> = Vec::new();
    let mut seen: HashSet<Vec<Elem>> = HashSet::new();
    // functionals λ ∈ F_p^r \ 0 up to scalars: first nonzero coordinate equal to 1
    let total = (p as usize).pow(r as u32);
    for code in 1..total {
        let lam: Vec<u64> = (0..r).map(|i| (code / (p as usize).pow(i as u32)) as u64 % p).collect();
        if lam.iter().find(|&&c| c != 0) != Some(&1) {
            continue;
        }
        let mut gens = phi.generators().to_vec();
        // kernel of λ: for each coordinate j after the first nonzero i, e_j - λ_j e_i, plus e_j with j before i
        let i = lam.iter().position(|&c| c != 0).unwrap();
        for j in 0..r {
            if j == i {
                continue;
            }
            let c = (p - lam[j]) % p;
            gens.push(a.mul(basis[j], a.pow(basis[i], c as i64)));
        }
        let m = Subgroup::generated(a, &gens);
        if seen.insert(m.elements().to_vec()) {
            out.push(m);
        }
    }
    out
}

/// All injective homomorphisms `src -> tgt` (exhaustive over generator images).
pub fn injective_homs(src: &Subgroup, tgt: &Subgroup) -> Vec<GroupHom> {
    let ta = tgt.ambient();
    let sa = src.ambient();
    let gens = src.generators().to_vec();
    let cands: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&g| {
            tgt.elements()
                .iter()
                .copied()
                .filter(|&y| ta.elem_order(y) == sa.elem_order(g))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    if cands.iter().any(|c| c.is_empty()) {
        return out;
    }
    loop {
        let imgs: Vec<Elem> = choice.iter().enumerate().map(|(i, &c)| cands[i][c]).collect();
        if let Ok(h) = GroupHom::from_generator_images(src, tgt, &imgs) {
            if h.is_injective() {
                out.push(h);
            }
        }
        let mut i = 0;
        loop {
            if i == gens.len() {
                return out;
            }
            choice[i] += 1;
            if choice[i] < cands[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_orders() {
        for (n, o) in [("C4", 4), ("C6", 6), ("D8", 8), ("S3", 6), ("S4", 24), ("A4", 12), ("V4", 4), ("E2^3", 8), ("1", 1)] {
            assert_eq!(Group::catalog(n).unwrap().order(), o, "{n}");
        }
        assert_eq!(Group::catalog("C6").unwrap().degree(), 5);
        assert!(Group::catalog("X9").is_err());
    }

    #[test]
    fn d8_centralizer_of_rotation() {
        let g = Group::catalog("D8").unwrap();
        let r = g.elements().find(|&x| g.elem_order(x) == 4).unwrap();
        let c4 = Subgroup::generated(&g, &[r]);
        let c = g.whole().centralizer(&c4).unwrap();
        assert_eq!(c, c4);
    }

    #[test]
    fn p_subgroup_counts() {
        let cnt = |n: &str, p| Group::catalog(n).unwrap().whole().p_subgroups_up_to_conjugacy(p).len();
        assert_eq!(cnt("C4", 2), 3);
        assert_eq!(cnt("D8", 2), 8);
        assert_eq!(cnt("S3", 3), 2);
        assert_eq!(cnt("S4", 2), 7);
        assert_eq!(cnt("A4", 2), 3);
    }

    #[test]
    fn s3_classes() {
        let g = Group::catalog("S3").unwrap();
        let w = g.whole();
        let mut sizes: Vec<usize> = w.conjugacy_classes().iter().map(|c| c.size()).collect();
        assert_eq!(sizes[0], 1);
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
    }

    #[test]
    fn p_part_of_order_six() {
        let g = Group::catalog("C6").unwrap();
        let x = g.generators()[0];
        let (u, s) = g.p_part_decomposition(x, 2);
        assert_eq!(u, g.pow(x, 3));
        assert_eq!(s, g.pow(x, 4));
        assert_eq!(g.p_part_decomposition(0, 2), (0, 0));
    }

    #[test]
    fn direct_product_structure() {
        let g = Group::catalog("D8").unwrap();
        let gg = Group::direct_product(&g, &g).unwrap();
        assert_eq!(gg.order(), 64);
        assert_eq!(gg.degree(), 8);
        let (a, b) = (3, 5);
        let x = gg.pair(a, b);
        assert_eq!(gg.split(x), (a, b));
        let p = gg.perm(x);
        assert_eq!(p, &g.perm(a).disjoint_union(g.perm(b)));
        let t = Group::direct_product(&Group::trivial(), &g).unwrap();
        assert_eq!(t.order(), 8);
    }

    #[test]
    fn homs_and_conjugation() {
        let g = Group::catalog("S3").unwrap();
        let w = g.whole();
        let auts = injective_homs(&w, &w);
        assert_eq!(auts.len(), 6);
        let t = w.elements()[3];
        let c = GroupHom::conjugation(&w, t);
        assert!(c.is_isomorphism());
        assert_eq!(c.inverse().unwrap().compose(&c).unwrap(), GroupHom::identity(&w));
    }

    #[test]
    fn double_cosets_s3() {
        let g = Group::catalog("S3").unwrap();
        let w = g.whole();
        let c3 = w.sylow(3);
        assert_eq!(w.double_coset_reps(&c3, &c3).unwrap().len(), 2);
        assert_eq!(w.left_transversal(&c3).unwrap().len(), 2);
    }

    #[test]
    fn frattini_and_maximal_subgroups_of_d8() {
        let g = Group::catalog("D8").unwrap();
        let w = g.whole();
        let phi = frattini(&w, 2);
        assert_eq!(phi, w.center());
        let maxes = maximal_subgroups_of_p_group(&w, 2);
        assert_eq!(maxes.len(), 3);
        assert!(maxes.iter().all(|m| m.order() == 4 && m.is_normal_in(&w)));
        let (q, pi) = quotient_group(&w, &phi).unwrap();
        assert_eq!(q.order(), 4);
        assert_eq!(pi.kernel(), phi);
        let e = Group::catalog("E2^3").unwrap();
        assert_eq!(maximal_subgroups_of_p_group(&e.whole(), 2).len(), 7);
    }
}
