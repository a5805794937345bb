use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Formula, PVar, Pred, Term};

/// The vocabulary a generated formula may draw from.
#[derive(Clone, Debug)]
pub struct GenSlice {
    pub consts: Vec<String>,
    /// Predicate constants with their arities.
    pub preds: Vec<(String, usize)>,
    /// Individual variable names available for binders (and, if `open`,
    /// for free occurrences).
    pub ivars: Vec<String>,
    /// Predicate variables available for binders.
    pub pvars: Vec<PVar>,
    /// Allow free variables in the output.
    pub open: bool,
}

impl Default for GenSlice {
    fn default() -> Self {
        GenSlice {
            consts: vec!["a".into(), "b".into()],
            preds: vec![
                ("A".into(), 0),
                ("B".into(), 0),
                ("P".into(), 1),
                ("R".into(), 2),
            ],
            ivars: vec!["x".into(), "y".into()],
            pvars: vec![PVar::new("X", 0), PVar::new("Y", 1)],
            open: true,
        }
    }
}

impl GenSlice {
    pub fn closed() -> Self {
        GenSlice { open: false, ..GenSlice::default() }
    }
}

/// A pseudo-random formula of depth at most `depth`, determined by `seed`.
/// Depth 1 always yields an atom.
pub fn gen_formula(seed: u64, depth: usize, slice: &GenSlice) -> Formula {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    gen_with(&mut rng, depth.max(1), slice)
}

pub(crate) fn gen_with<R: Rng>(rng: &mut R, depth: usize, slice: &GenSlice) -> Formula {
    Gen { slice, ibound: Vec::new(), pbound: Vec::new() }.formula(rng, depth)
}

struct Gen<'a> {
    slice: &'a GenSlice,
    ibound: Vec<String>,
    pbound: Vec<PVar>,
}

impl Gen<'_> {
    fn formula<R: Rng>(&mut self, rng: &mut R, depth: usize) -> Formula {
        if depth <= 1 || rng.gen_ratio(1, 4) {
            return self.atom(rng);
        }
        match rng.gen_range(0..4) {
            0 | 1 => {
                let a = self.formula(rng, depth - 1);
                let b = self.formula(rng, depth - 1);
                Formula::imp(a, b)
            }
            2 if !self.slice.ivars.is_empty() => {
                let x = self.slice.ivars.choose(rng).unwrap().clone();
                self.ibound.push(x.clone());
                let body = self.formula(rng, depth - 1);
                self.ibound.pop();
                Formula::forall_i(x, body)
            }
            _ if !self.slice.pvars.is_empty() => {
                let x = self.slice.pvars.choose(rng).unwrap().clone();
                self.pbound.push(x.clone());
                let body = self.formula(rng, depth - 1);
                self.pbound.pop();
                Formula::forall_p(x, body)
            }
            _ => {
                let a = self.formula(rng, depth - 1);
                let b = self.formula(rng, depth - 1);
                Formula::imp(a, b)
            }
        }
    }

    fn atom<R: Rng>(&self, rng: &mut R) -> Formula {
        let pvars: Vec<&PVar> = if self.slice.open {
            self.slice.pvars.iter().chain(self.pbound.iter()).collect()
        } else {
            self.pbound.iter().collect()
        };
        let use_var = !pvars.is_empty() && (self.slice.preds.is_empty() || rng.gen_ratio(1, 3));
        let (pred, arity) = if use_var {
            let v = pvars.choose(rng).unwrap();
            (Pred::Var(v.name.clone()), v.arity)
        } else {
            let (name, arity) = self
                .slice
                .preds
                .choose(rng)
                .expect("slice must declare a predicate constant or a predicate variable");
            (Pred::Const(name.clone()), *arity)
        };
        let args = (0..arity).map(|_| self.term(rng)).collect();
        Formula::Atom(pred, args)
    }

    fn term<R: Rng>(&self, rng: &mut R) -> Term {
        let vars: Vec<&String> = if self.slice.open {
            self.slice.ivars.iter().collect()
        } else {
            self.ibound.iter().collect()
        };
        if !vars.is_empty() && (self.slice.consts.is_empty() || rng.gen_bool(0.5)) {
            Term::Var(vars.choose(rng).unwrap().to_string())
        } else {
            let c = self.slice.consts.choose(rng).expect("slice must declare a constant");
            Term::Const(c.clone())
        }
    }
}
