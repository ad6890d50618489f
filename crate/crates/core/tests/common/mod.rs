//! A deliberately naive reference evaluator, sharing no code with the
//! library beyond the PD input convention: a crossing `[a, b, c, d]` lists
//! its arcs counterclockwise, the under strand runs `a → c`, and the crossing
//! is positive when the over strand runs `b → d`.
//!
//! No memoization, no simplification, fixed base points, plain `i128`
//! coefficients.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use skeinlab::BiLaurent;

pub type Poly = BTreeMap<(i32, i32), i128>;

pub fn p(terms: &[(i128, i32, i32)]) -> Poly {
    let mut out = Poly::new();
    for &(c, e1, e2) in terms {
        add_term(&mut out, (e1, e2), c);
    }
    out
}

fn add_term(out: &mut Poly, e: (i32, i32), c: i128) {
    let v = out.entry(e).or_insert(0);
    *v += c;
    if *v == 0 {
        out.remove(&e);
    }
}

pub fn add(x: &Poly, y: &Poly) -> Poly {
    let mut out = x.clone();
    for (&e, &c) in y {
        add_term(&mut out, e, c);
    }
    out
}

pub fn mul(x: &Poly, y: &Poly) -> Poly {
    let mut out = Poly::new();
    for (&(a1, a2), &c) in x {
        for (&(b1, b2), &d) in y {
            add_term(&mut out, (a1 + b1, a2 + b2), c * d);
        }
    }
    out
}

pub fn pow(x: &Poly, n: usize) -> Poly {
    (0..n).fold(p(&[(1, 0, 0)]), |acc, _| mul(&acc, x))
}

pub fn from_lib(b: &BiLaurent) -> Poly {
    let mut out = Poly::new();
    for (&e, c) in b.terms() {
        add_term(&mut out, e, i128::try_from(c).expect("coefficient fits in i128"));
    }
    out
}

/// Crossing with the under strand entering at slot 0.
#[derive(Clone, Copy, Debug)]
struct X {
    l: [u32; 4],
    /// over strand runs slot 1 → slot 3
    pos: bool,
}

impl X {
    fn sign(&self) -> i64 {
        if self.pos {
            1
        } else {
            -1
        }
    }

    fn entering(&self, slot: usize) -> bool {
        slot == 0 || (slot == 1) == self.pos && slot % 2 == 1
    }

    fn switched(&self) -> X {
        let [a, b, c, d] = self.l;
        if self.pos {
            X { l: [b, c, d, a], pos: false }
        } else {
            X { l: [d, a, b, c], pos: true }
        }
    }
}

#[derive(Clone, Debug)]
pub struct Link {
    xs: Vec<X>,
    loops: usize,
}

/// Orients a PD list by propagating directions along arcs from the under
/// strands; `signs` settle crossings that propagation cannot reach.
pub fn link(pd: &[[u32; 4]], signs: Option<&[i32]>, loops: usize) -> Link {
    let mut occ: HashMap<u32, Vec<(usize, usize)>> = HashMap::new();
    for (i, q) in pd.iter().enumerate() {
        for (s, &l) in q.iter().enumerate() {
            occ.entry(l).or_default().push((i, s));
        }
    }
    let other = |i: usize, s: usize| -> (usize, usize) {
        let v = &occ[&pd[i][s]];
        assert_eq!(v.len(), 2, "label {} must occur twice", pd[i][s]);
        if v[0] == (i, s) {
            v[1]
        } else {
            v[0]
        }
    };
    let mut pos: Vec<Option<bool>> = vec![None; pd.len()];
    if let Some(sg) = signs {
        for (i, &s) in sg.iter().enumerate() {
            pos[i] = Some(s > 0);
        }
    }
    // entering slots known so far: walk forward from each until stuck
    let mut stack: Vec<(usize, usize)> = (0..pd.len()).map(|i| (i, 0)).collect();
    for (i, q) in pos.iter().enumerate() {
        if let Some(p) = q {
            stack.push((i, if *p { 1 } else { 3 }));
        }
    }
    let mut seen = std::collections::HashSet::new();
    while let Some((i, s)) = stack.pop() {
        if !seen.insert((i, s)) {
            continue;
        }
        let (j, t) = other(i, (s + 2) % 4);
        if t % 2 == 1 {
            let p = t == 1;
            assert!(pos[j].is_none_or(|q| q == p), "inconsistent orientation at crossing {j}");
            pos[j] = Some(p);
        } else {
            assert_eq!(t, 0, "under strand entered at its exit slot");
        }
        stack.push((j, t));
    }
    let xs = pd
        .iter()
        .zip(&pos)
        .map(|(q, p)| X { l: *q, pos: p.expect("crossing orientation undetermined") })
        .collect();
    Link { xs, loops }
}

impl Link {
    fn other(&self, i: usize, s: usize) -> (usize, usize) {
        let l = self.xs[i].l[s];
        for (j, x) in self.xs.iter().enumerate() {
            for t in 0..4 {
                if x.l[t] == l && (j, t) != (i, s) {
                    return (j, t);
                }
            }
        }
        panic!("label {l} occurs once")
    }

    /// Components as sequences of entered `(crossing, slot)`, each starting
    /// at the head of an arc in `base`, then at the first unvisited
    /// entering slot in list order.
    fn traverse(&self, base: &[u32]) -> (Vec<Vec<(usize, usize)>>, Vec<u32>) {
        let mut visited = vec![[false; 4]; self.xs.len()];
        let mut comps = Vec::new();
        let mut starts = Vec::new();
        let mut candidates: Vec<(usize, usize)> = Vec::new();
        for &l in base {
            for (i, x) in self.xs.iter().enumerate() {
                for s in 0..4 {
                    if x.l[s] == l && x.entering(s) {
                        candidates.push((i, s));
                    }
                }
            }
        }
        for (i, x) in self.xs.iter().enumerate() {
            for s in 0..4 {
                if x.entering(s) {
                    candidates.push((i, s));
                }
            }
        }
        for (i0, s0) in candidates {
            if visited[i0][s0] {
                continue;
            }
            starts.push(self.xs[i0].l[s0]);
            let mut comp = Vec::new();
            let (mut i, mut s) = (i0, s0);
            while !visited[i][s] {
                visited[i][s] = true;
                comp.push((i, s));
                (i, s) = self.other(i, (s + 2) % 4);
            }
            comps.push(comp);
        }
        (comps, starts)
    }

    fn components(&self) -> usize {
        self.traverse(&[]).0.len() + self.loops
    }

    fn writhe(&self) -> i64 {
        self.xs.iter().map(X::sign).sum()
    }

    /// First crossing met from below, in traversal order from `base`.
    fn first_bad(&self, base: &[u32]) -> Option<usize> {
        let (comps, _) = self.traverse(base);
        let mut met = vec![false; self.xs.len()];
        for (i, s) in comps.into_iter().flatten() {
            if !met[i] {
                if s % 2 == 0 {
                    return Some(i);
                }
                met[i] = true;
            }
        }
        None
    }

    fn switch(&self, i: usize) -> Link {
        let mut out = self.clone();
        out.xs[i] = self.xs[i].switched();
        out
    }

    /// Removes crossing `i`, joining its four ends in the given pairs;
    /// returns the unoriented remainder as PD plus loop count.
    fn smooth(&self, i: usize, pairs: [(usize, usize); 2]) -> (Vec<[u32; 4]>, usize) {
        let l = self.xs[i].l;
        let mut parent: HashMap<u32, u32> = HashMap::new();
        fn find(p: &mut HashMap<u32, u32>, x: u32) -> u32 {
            let y = *p.get(&x).unwrap_or(&x);
            if y == x {
                x
            } else {
                let r = find(p, y);
                p.insert(x, r);
                r
            }
        }
        for (s, t) in pairs {
            let (a, b) = (find(&mut parent, l[s]), find(&mut parent, l[t]));
            if a != b {
                parent.insert(a, b);
            }
        }
        let rest: Vec<[u32; 4]> = self
            .xs
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, x)| x.l.map(|a| find(&mut parent, a)))
            .collect();
        let mut classes: Vec<u32> = l.iter().map(|&a| find(&mut parent, a)).collect();
        classes.sort_unstable();
        classes.dedup();
        let new_loops = classes.iter().filter(|c| !rest.iter().flatten().any(|a| a == *c)).count();
        (rest, self.loops + new_loops)
    }

    /// Oriented smoothing: each incoming end joined to the outgoing end
    /// beside it.
    fn smooth_oriented(&self, i: usize) -> Link {
        let pairs = if self.xs[i].pos { [(0, 3), (1, 2)] } else { [(0, 1), (3, 2)] };
        let (pd, loops) = self.smooth(i, pairs);
        // orientation carries over: every remaining crossing keeps its slots
        let mut out = Link { xs: Vec::new(), loops };
        let kept: Vec<bool> = self.xs.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| x.pos).collect();
        for (q, p) in pd.into_iter().zip(kept) {
            out.xs.push(X { l: q, pos: p });
        }
        out
    }

    fn smooth_unoriented(&self, i: usize, pairs: [(usize, usize); 2]) -> Link {
        let (pd, loops) = self.smooth(i, pairs);
        reorient(&pd, loops)
    }
}

/// Picks an orientation of an unoriented PD list, component by component.
fn reorient(pd: &[[u32; 4]], loops: usize) -> Link {
    let n = pd.len();
    let other = |i: usize, s: usize| -> (usize, usize) {
        for (j, q) in pd.iter().enumerate() {
            for (t, &l) in q.iter().enumerate() {
                if l == pd[i][s] && (j, t) != (i, s) {
                    return (j, t);
                }
            }
        }
        panic!("label occurs once")
    };
    let mut entered: Vec<[bool; 4]> = vec![[false; 4]; n];
    let mut done = vec![[false; 4]; n];
    for i0 in 0..n {
        for s0 in 0..4 {
            if done[i0][s0] {
                continue;
            }
            let (mut i, mut s) = (i0, s0);
            while !done[i][s] {
                done[i][s] = true;
                entered[i][s] = true;
                let e = (s + 2) % 4;
                done[i][e] = true;
                (i, s) = other(i, e);
            }
        }
    }
    let xs = pd
        .iter()
        .zip(&entered)
        .map(|(q, en)| {
            let l = if en[0] { *q } else { [q[2], q[3], q[0], q[1]] };
            let over_in = if en[0] { if en[1] { 1 } else { 3 } } else if en[3] { 1 } else { 3 };
            X { l, pos: over_in == 1 }
        })
        .collect();
    Link { xs, loops }
}

fn vz(c: i128, e1: i32, e2: i32) -> Poly {
    p(&[(c, e1, e2)])
}

pub fn delta_p() -> Poly {
    p(&[(1, -1, -1), (-1, 1, -1)])
}

pub fn delta_l() -> Poly {
    p(&[(1, -1, -1), (1, 1, -1), (-1, 0, 0)])
}

pub fn delta_d() -> Poly {
    p(&[(-1, -1, -1), (1, 1, -1), (1, 0, 0)])
}

fn homfly_at(k: &Link, base: &[u32]) -> Poly {
    let Some(i) = k.first_bad(base) else {
        return pow(&delta_p(), k.components());
    };
    let smoothed = homfly(&k.smooth_oriented(i));
    let switched = homfly_at(&k.switch(i), base);
    if k.xs[i].pos {
        add(&mul(&vz(1, 2, 0), &switched), &mul(&vz(1, 1, 1), &smoothed))
    } else {
        add(&mul(&vz(1, -2, 0), &switched), &mul(&vz(-1, -1, 1), &smoothed))
    }
}

pub fn homfly(k: &Link) -> Poly {
    let (_, base) = k.traverse(&[]);
    homfly_at(k, &base)
}

fn kauffman_like(k: &Link, dubrovnik: bool) -> Poly {
    let (_, base) = k.traverse(&[]);
    kauffman_at(k, &base, dubrovnik)
}

fn kauffman_at(k: &Link, base: &[u32], dubrovnik: bool) -> Poly {
    let Some(i) = k.first_bad(base) else {
        let delta = if dubrovnik { delta_d() } else { delta_l() };
        return mul(&vz(1, k.writhe() as i32, 0), &pow(&delta, k.components()));
    };
    let switched = kauffman_at(&k.switch(i), base, dubrovnik);
    let ab = kauffman_like(&k.smooth_unoriented(i, [(0, 1), (2, 3)]), dubrovnik);
    let ad = kauffman_like(&k.smooth_unoriented(i, [(0, 3), (1, 2)]), dubrovnik);
    let x = vz(1, 0, 1);
    if !dubrovnik {
        // L(X) = −L(X') + x(L(X₀) + L(X∞))
        return add(&mul(&vz(-1, 0, 0), &switched), &mul(&x, &add(&ab, &ad)));
    }
    // D(X₊) − D(X₋) = x(D(X₀) − D(X∞)), X₀ the oriented smoothing
    let (oriented, other) = if k.xs[i].pos { (ad, ab) } else { (ab, ad) };
    let diff = mul(&x, &add(&oriented, &mul(&vz(-1, 0, 0), &other)));
    if k.xs[i].pos {
        add(&switched, &diff)
    } else {
        add(&switched, &mul(&vz(-1, 0, 0), &diff))
    }
}

pub fn kauffman(k: &Link) -> Poly {
    kauffman_like(k, false)
}

pub fn dubrovnik(k: &Link) -> Poly {
    kauffman_like(k, true)
}

pub fn writhe(k: &Link) -> i64 {
    k.writhe()
}

/// `|V(−1)|` with `V = P/δ_P` at `v = t`, `z = t^{1/2} − t^{-1/2}`, read
/// at `t^{1/2} = i`, so `v = −1` and `z = 2i`.
pub fn determinant(homfly: &Poly) -> u64 {
    // divide out δ_P = z⁻¹v⁻¹(1 − v²) one z-slice at a time
    let mut slices: BTreeMap<i32, BTreeMap<i32, i128>> = BTreeMap::new();
    for (&(e1, e2), &c) in homfly {
        slices.entry(e2 + 1).or_default().insert(e1 + 1, c);
    }
    let lowest = slices.keys().next().copied().unwrap_or(0).min(0);
    // S = Σ q_k(−1)(2i)^(k − lowest), so that V(−1) = S / (2i)^(−lowest)
    let (mut re, mut im) = (0i128, 0i128);
    for (ze, slice) in slices {
        // q(v)(1 − v²) = slice(v): peel terms from the bottom
        let mut rem = slice;
        let mut q: BTreeMap<i32, i128> = BTreeMap::new();
        while let Some((&e, &c)) = rem.iter().next() {
            q.insert(e, c);
            rem.remove(&e);
            let t = rem.entry(e + 2).or_insert(0);
            *t += c;
            if *t == 0 {
                rem.remove(&(e + 2));
            }
            assert!(q.len() < 10_000, "P is not divisible by δ_P");
        }
        let at_minus_one: i128 = q.iter().map(|(&e, &c)| if e % 2 == 0 { c } else { -c }).sum();
        let mut unit = (1i128, 0i128);
        for _ in 0..(ze - lowest) {
            unit = (-2 * unit.1, 2 * unit.0);
        }
        re += at_minus_one * unit.0;
        im += at_minus_one * unit.1;
    }
    let scale = 1i128 << (-lowest);
    assert!(re % scale == 0 && im % scale == 0, "V(-1) is not an integer");
    let (re, im) = (re / scale, im / scale);
    assert!(re == 0 || im == 0, "V(-1) is not a unit multiple of an integer");
    (re.abs() + im.abs()) as u64
}
