//! Double description: generators of `{y : ⟨g,y⟩ ≥ 0, ⟨e,y⟩ = 0}`.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::rat::{dot, primitive, unit, QVec, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }
    fn full_prefix(n: usize, len: usize) -> Self {
        let mut b = Bits::new(len);
        for i in 0..n {
            b.set(i);
        }
        b
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn subset_of(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
}

pub(crate) struct Generators {
    pub rays: Vec<QVec>,
    pub lineality: Vec<QVec>,
}

pub(crate) fn cone_generators(dim: usize, ineqs: &[QVec], eqs: &[QVec]) -> Generators {
    let mut lin: Vec<QVec> = (0..dim).map(|i| unit(dim, i)).collect();
    for e in eqs {
        eliminate(&mut lin, &mut [], e);
    }
    let ambient = lin.len();
    let total = ineqs.len();
    let mut rays: Vec<(QVec, Bits)> = Vec::new();
    for (k, g) in ineqs.iter().enumerate() {
        if g.iter().all(|x| x.is_zero()) {
            for (_, z) in rays.iter_mut() {
                z.set(k);
            }
            continue;
        }
        if let Some(p) = lin.iter().position(|l| !dot(g, l).is_zero()) {
            let mut pv = lin.remove(p);
            if dot(g, &pv).is_negative() {
                pv = pv.iter().map(|x| -x).collect();
            }
            let gp = dot(g, &pv);
            for l in lin.iter_mut() {
                let c = dot(g, l) / &gp;
                if !c.is_zero() {
                    for (x, y) in l.iter_mut().zip(&pv) {
                        *x -= &c * y;
                    }
                }
            }
            for (r, z) in rays.iter_mut() {
                let c = dot(g, r) / &gp;
                if !c.is_zero() {
                    for (x, y) in r.iter_mut().zip(&pv) {
                        *x -= &c * y;
                    }
                    *r = primitive(r);
                }
                z.set(k);
            }
            rays.push((primitive(&pv), Bits::full_prefix(k, total)));
            continue;
        }
        let vals: Vec<Q> = rays.iter().map(|(r, _)| dot(g, r)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let negs: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if negs.is_empty() {
            for (i, (_, z)) in rays.iter_mut().enumerate() {
                if vals[i].is_zero() {
                    z.set(k);
                }
            }
            continue;
        }
        // a pair can only be adjacent if its common zero set is large enough
        let need = (ambient - lin.len()).saturating_sub(2) as u32;
        let mut fresh: Vec<(QVec, Bits)> = Vec::new();
        for &p in &pos {
            for &n in &negs {
                let common = rays[p].1.and(&rays[n].1);
                if common.count() < need {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .all(|r| r == p || r == n || !common.subset_of(&rays[r].1));
                if !adjacent {
                    continue;
                }
                let a = &vals[p];
                let b = -&vals[n];
                let v: QVec = rays[n].0.iter().zip(&rays[p].0).map(|(x, y)| a * x + &b * y).collect();
                let mut z = common;
                z.set(k);
                fresh.push((primitive(&v), z));
            }
        }
        let mut kept: Vec<(QVec, Bits)> = Vec::new();
        for (i, (r, mut z)) in rays.into_iter().enumerate() {
            if vals[i].is_negative() {
                continue;
            }
            if vals[i].is_zero() {
                z.set(k);
            }
            kept.push((r, z));
        }
        kept.extend(fresh);
        rays = kept;
    }
    Generators {
        rays: rays.into_iter().map(|(r, _)| r).collect(),
        lineality: lin.into_iter().map(|l| primitive(&l)).collect(),
    }
}

fn eliminate(lin: &mut Vec<QVec>, _rays: &mut [QVec], e: &[Q]) {
    let Some(p) = lin.iter().position(|l| !dot(e, l).is_zero()) else { return };
    let pv = lin.remove(p);
    let ep = dot(e, &pv);
    for l in lin.iter_mut() {
        let c = dot(e, l) / &ep;
        if !c.is_zero() {
            for (x, y) in l.iter_mut().zip(&pv) {
                *x -= &c * y;
            }
        }
    }
}
