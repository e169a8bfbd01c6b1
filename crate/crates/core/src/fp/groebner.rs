//! Buchberger's algorithm over `F_p`.

use super::mpoly::{divides, lcm, MPoly, Monomial, MonomialOrder};
use std::collections::BTreeSet;
use std::sync::OnceLock;

/// Full reduction of `f` modulo `basis`.
pub fn normal_form(f: &MPoly, basis: &[MPoly], order: MonomialOrder) -> MPoly {
    let leads: Vec<(Monomial, u64)> = basis
        .iter()
        .map(|g| {
            let (e, c) = g.leading(order).expect("nonzero basis element");
            (e.clone(), c)
        })
        .collect();
    let fld = f.field;
    let mut rem = MPoly::zero(fld, f.nvars);
    let mut p = f.clone();
    while let Some((lt, lc)) = p.leading(order).map(|(e, c)| (e.clone(), c)) {
        match leads.iter().position(|(e, _)| divides(e, &lt)) {
            Some(i) => {
                let (ge, gc) = &leads[i];
                let shift: Monomial = lt.iter().zip(ge).map(|(x, y)| x - y).collect();
                let c = fld.div(lc, *gc);
                p = p.sub(&basis[i].mul_term(&shift, c));
            }
            None => {
                p.terms.remove(&lt);
                rem.terms.insert(lt, lc);
            }
        }
    }
    rem
}

fn s_poly(a: &MPoly, b: &MPoly, order: MonomialOrder) -> MPoly {
    let (ea, ca) = a.leading(order).unwrap();
    let (eb, cb) = b.leading(order).unwrap();
    let l = lcm(ea, eb);
    let sa: Monomial = l.iter().zip(ea).map(|(x, y)| x - y).collect();
    let sb: Monomial = l.iter().zip(eb).map(|(x, y)| x - y).collect();
    let f = a.field;
    a.mul_term(&sa, f.inv(ca)).sub(&b.mul_term(&sb, f.inv(cb)))
}

/// Reduced Gröbner basis (monic, sorted by decreasing leading monomial).
///
/// Uses the normal selection strategy with the coprime-leading-monomial and chain criteria.
pub fn groebner_basis(gens: &[MPoly], order: MonomialOrder) -> Vec<MPoly> {
    let mut g: Vec<MPoly> = Vec::new();
    for p in gens {
        let r = normal_form(p, &g, order);
        if !r.is_zero() {
            g.push(r.monic(order));
        }
    }
    if g.iter().any(|p| p.is_constant()) {
        let f = g[0].field;
        return vec![MPoly::constant(f, g[0].nvars, 1)];
    }
    let lead = |p: &MPoly| p.leading(order).unwrap().0.clone();
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..g.len() {
        for i in 0..j {
            pairs.insert((i, j));
        }
    }
    while !pairs.is_empty() {
        // Normal strategy: the pair with the smallest lcm.
        let &(i, j) = pairs
            .iter()
            .min_by(|a, b| {
                let la = lcm(&lead(&g[a.0]), &lead(&g[a.1]));
                let lb = lcm(&lead(&g[b.0]), &lead(&g[b.1]));
                order.cmp(&la, &lb).then(a.cmp(b))
            })
            .unwrap();
        pairs.remove(&(i, j));
        let (li, lj) = (lead(&g[i]), lead(&g[j]));
        let l = lcm(&li, &lj);
        // Product criterion.
        if li.iter().zip(&lj).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        // Chain criterion.
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        let chain = (0..g.len()).any(|k| {
            k != i && k != j && divides(&lead(&g[k]), &l) && !pairs.contains(&key(i, k)) && !pairs.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let s = s_poly(&g[i], &g[j], order);
        let r = normal_form(&s, &g, order);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return vec![MPoly::constant(r.field, r.nvars, 1)];
        }
        let k = g.len();
        g.push(r.monic(order));
        for i in 0..k {
            pairs.insert((i, k));
        }
    }
    reduce_basis(g, order)
}

fn reduce_basis(mut g: Vec<MPoly>, order: MonomialOrder) -> Vec<MPoly> {
    // Drop elements whose leading monomial is divisible by another's.
    let mut keep: Vec<MPoly> = Vec::new();
    g.sort_by(|a, b| order.cmp(a.leading(order).unwrap().0, b.leading(order).unwrap().0));
    for p in g {
        let lp = p.leading(order).unwrap().0.clone();
        if keep.iter().any(|q| divides(q.leading(order).unwrap().0, &lp)) {
            continue;
        }
        keep.push(p);
    }
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<MPoly> = keep.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, q)| q.clone()).collect();
        let r = normal_form(&keep[i], &others, order).monic(order);
        out.push(r);
    }
    out.sort_by(|a, b| order.cmp(b.leading(order).unwrap().0, a.leading(order).unwrap().0));
    out
}

/// An ideal of `F_p[x_0..x_n]` with lazily computed Gröbner bases.
#[derive(Debug)]
pub struct Ideal {
    gens: Vec<MPoly>,
    lex: OnceLock<Vec<MPoly>>,
    grevlex: OnceLock<Vec<MPoly>>,
}

impl Ideal {
    pub fn new(gens: Vec<MPoly>) -> Ideal {
        Ideal {
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            lex: OnceLock::new(),
            grevlex: OnceLock::new(),
        }
    }

    pub fn generators(&self) -> &[MPoly] {
        &self.gens
    }

    pub fn basis(&self, order: MonomialOrder) -> &[MPoly] {
        let cell = match order {
            MonomialOrder::Lex => &self.lex,
            MonomialOrder::GrevLex => &self.grevlex,
        };
        cell.get_or_init(|| groebner_basis(&self.gens, order))
    }

    pub fn is_unit(&self) -> bool {
        self.basis(MonomialOrder::GrevLex).iter().any(|g| g.is_constant())
    }

    pub fn contains(&self, f: &MPoly) -> bool {
        if self.gens.is_empty() {
            return f.is_zero();
        }
        normal_form(f, self.basis(MonomialOrder::GrevLex), MonomialOrder::GrevLex).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::field::Fp;

    fn poly(f: Fp, n: usize, terms: &[(&[u32], u64)]) -> MPoly {
        let mut m = MPoly::zero(f, n);
        for (e, c) in terms {
            m = m.add(&MPoly::monomial(f, e.to_vec(), *c));
        }
        m
    }

    #[test]
    fn basis_generates_same_ideal() {
        let f = Fp::new(7).unwrap();
        // x^2 + y^2 - 1, x - y
        let a = poly(f, 2, &[(&[2, 0], 1), (&[0, 2], 1), (&[0, 0], 6)]);
        let b = poly(f, 2, &[(&[1, 0], 1), (&[0, 1], 6)]);
        for order in [MonomialOrder::Lex, MonomialOrder::GrevLex] {
            let g = groebner_basis(&[a.clone(), b.clone()], order);
            assert!(normal_form(&a, &g, order).is_zero());
            assert!(normal_form(&b, &g, order).is_zero());
        }
        let g = groebner_basis(&[a, b], MonomialOrder::Lex);
        // Lex basis: x - y, 2y^2 - 1 (monic: y^2 - 4).
        assert_eq!(g.len(), 2);
        assert_eq!(g[1], poly(f, 2, &[(&[0, 2], 1), (&[0, 0], 3)]));
    }

    #[test]
    fn inconsistent_system() {
        let f = Fp::new(3).unwrap();
        let a = poly(f, 2, &[(&[1, 0], 1)]);
        let b = poly(f, 2, &[(&[1, 0], 1), (&[0, 0], 1)]);
        let i = Ideal::new(vec![a, b]);
        assert!(i.is_unit());
    }
}
