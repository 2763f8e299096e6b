use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use super::{compile_primrec, LambdaError, Term, Type};
use crate::basis::{BasisRef, Token};
use crate::constructors::{FunSpaceBasis, ProductBasis, Stream, DEFAULT_FUNSPACE_LIMIT};
use crate::fixtures::{flat_nats, shared, stream_basis, stream_map, truth};
use crate::mapping::ApproxMap;

/// Largest natural in the default flat naturals.
pub const DEFAULT_NAT_MAX: usize = 64;
/// Longest string in the default truncated stream basis.
pub const DEFAULT_STREAM_LEN: usize = 6;

#[derive(Clone, Debug)]
pub enum Interp {
    Token(Token),
    Map(ApproxMap),
    /// A constant defined by a closed term, expanded where it is used.
    Term(Term),
}

#[derive(Clone, Debug)]
pub struct Constant {
    pub ty: Type,
    pub interp: Interp,
}

/// Base types and typed constants. `cond` is built in at every type, and
/// numerals name the atoms of the base `N` when it is present.
#[derive(Debug)]
pub struct Signature {
    bases: BTreeMap<String, BasisRef>,
    consts: BTreeMap<String, Constant>,
    products: Mutex<HashMap<(Type, Type), Arc<ProductBasis>>>,
    funspaces: Mutex<HashMap<(Type, Type), Arc<FunSpaceBasis>>>,
    funspace_limit: usize,
}

impl Clone for Signature {
    fn clone(&self) -> Self {
        Signature {
            bases: self.bases.clone(),
            consts: self.consts.clone(),
            products: Mutex::new(HashMap::new()),
            funspaces: Mutex::new(HashMap::new()),
            funspace_limit: self.funspace_limit,
        }
    }
}

impl Default for Signature {
    fn default() -> Self {
        Signature::empty()
    }
}

fn nat() -> Type {
    Type::base("N")
}

fn nat2() -> Type {
    Type::prod(nat(), nat())
}

impl Signature {
    pub fn empty() -> Signature {
        Signature {
            bases: BTreeMap::new(),
            consts: BTreeMap::new(),
            products: Mutex::new(HashMap::new()),
            funspaces: Mutex::new(HashMap::new()),
            funspace_limit: DEFAULT_FUNSPACE_LIMIT,
        }
    }

    pub fn with_funspace_limit(mut self, limit: usize) -> Signature {
        self.funspace_limit = limit;
        self
    }

    pub fn add_base(&mut self, name: &str, basis: BasisRef) {
        self.bases.insert(name.to_string(), basis);
    }

    pub fn add_token(&mut self, name: &str, base: &str, label: &str) -> Result<(), LambdaError> {
        let b = self.base(base)?;
        let t = b.lookup(label).ok_or_else(|| LambdaError::BadValue(format!("{label} in {base}")))?;
        self.consts.insert(name.to_string(), Constant { ty: Type::base(base), interp: Interp::Token(t) });
        Ok(())
    }

    pub fn add_map(&mut self, name: &str, ty: Type, map: ApproxMap) {
        self.consts.insert(name.to_string(), Constant { ty, interp: Interp::Map(map) });
    }

    pub fn add_term(&mut self, name: &str, ty: Type, term: Term) {
        self.consts.insert(name.to_string(), Constant { ty, interp: Interp::Term(term) });
    }

    /// Flat naturals `N = {⊥, 0, …, max}` and truth values `T`, with
    /// `succ`, `pred`, `zero`, numerals, `true`, `false`, and the derived
    /// `add`, `mul`, `sub` (truncated subtraction) and `dist = |x − y|`.
    /// `succ(max) = ⊥`.
    pub fn flat_nats(max: usize) -> Signature {
        let mut sig = Signature::empty();
        let n = shared(flat_nats(max));
        let t = shared(truth());
        sig.add_base("N", n.clone());
        sig.add_base("T", t.clone());
        sig.add_token("true", "T", "true").unwrap();
        sig.add_token("false", "T", "false").unwrap();
        let value = |tok: Token| n.label(tok).parse::<usize>().ok();
        let num = |k: usize| n.lookup(&k.to_string()).unwrap_or(n.bottom());
        let succ = ApproxMap::from_fn(&n, &n, |x| value(x).map_or(n.bottom(), |k| num(k + 1))).unwrap();
        let pred = ApproxMap::from_fn(&n, &n, |x| match value(x) {
            Some(k) if k > 0 => num(k - 1),
            _ => n.bottom(),
        })
        .unwrap();
        let zero = ApproxMap::from_fn(&n, &t, |x| match value(x) {
            Some(0) => t.lookup("true").unwrap(),
            Some(_) => t.lookup("false").unwrap(),
            None => t.bottom(),
        })
        .unwrap();
        sig.add_map("succ", Type::arrow(nat(), nat()), succ);
        sig.add_map("pred", Type::arrow(nat(), nat()), pred);
        sig.add_map("zero", Type::arrow(nat(), Type::base("T")), zero);

        let v = Term::var;
        let c = Term::constant;
        let app = Term::app;
        let id = Term::lam(&[("m", nat())], v("m"));
        let three = [("n", nat()), ("m", nat()), ("r", nat())];
        let add = compile_primrec(&id, &Term::lam(&three, app(c("succ"), v("r"))), &sig).unwrap();
        sig.add_term("add", Type::arrow(nat2(), nat()), add);
        let mul = compile_primrec(
            &Term::lam(&[("m", nat())], c("0")),
            &Term::lam(&three, Term::call(c("add"), vec![v("r"), v("m")])),
            &sig,
        )
        .unwrap();
        sig.add_term("mul", Type::arrow(nat2(), nat()), mul);
        // h(n, m) = m ∸ n, using a predecessor with pred'(0) = 0.
        let pred0 = Term::cond(app(c("zero"), v("r")), c("0"), app(c("pred"), v("r")));
        let monus = compile_primrec(&id, &Term::lam(&three, pred0), &sig).unwrap();
        let sub = Term::lam(&[("x", nat()), ("y", nat())], Term::call(monus, vec![v("y"), v("x")]));
        sig.add_term("sub", Type::arrow(nat2(), nat()), sub);
        let dist = Term::lam(
            &[("x", nat()), ("y", nat())],
            Term::call(
                c("add"),
                vec![Term::call(c("sub"), vec![v("x"), v("y")]), Term::call(c("sub"), vec![v("y"), v("x")])],
            ),
        );
        sig.add_term("dist", Type::arrow(nat2(), nat()), dist);
        sig
    }

    /// Truncated bitstreams `C` (strings up to `max_len`) and truth values,
    /// with `succ0`, `succ1`, `tail`, `empty`, `zero`, `one` and `eps`.
    /// Results longer than `max_len` are cut back to a partial string.
    pub fn streams(max_len: usize) -> Signature {
        let mut sig = Signature::empty();
        let c = shared(stream_basis(max_len));
        let t = shared(truth());
        sig.add_base("C", c.clone());
        sig.add_base("T", t.clone());
        sig.add_token("true", "T", "true").unwrap();
        sig.add_token("false", "T", "false").unwrap();
        sig.add_token("eps", "C", "ε").unwrap();
        let cc = Type::arrow(Type::base("C"), Type::base("C"));
        let ct = Type::arrow(Type::base("C"), Type::base("T"));
        sig.add_map("succ0", cc.clone(), stream_map(&c, max_len, |s| s.prepend("0")));
        sig.add_map("succ1", cc.clone(), stream_map(&c, max_len, |s| s.prepend("1")));
        let tail = stream_map(&c, max_len, |s| match s.bits.split_first() {
            Some((_, rest)) => Stream { bits: rest.to_vec(), total: s.total },
            None => Stream::partial(""),
        });
        sig.add_map("tail", cc, tail);
        let test = |f: fn(&Stream) -> Option<bool>| {
            ApproxMap::from_fn(&c, &t, |x| {
                let s = Stream::parse(&c.label(x)).unwrap();
                match f(&s) {
                    Some(true) => t.lookup("true").unwrap(),
                    Some(false) => t.lookup("false").unwrap(),
                    None => t.bottom(),
                }
            })
            .unwrap()
        };
        sig.add_map(
            "empty",
            ct.clone(),
            test(|s| if s.bits.is_empty() { s.total.then_some(true) } else { Some(false) }),
        );
        sig.add_map(
            "zero",
            ct.clone(),
            test(|s| match s.bits.first() {
                Some(&b) => Some(!b),
                None => s.total.then_some(false),
            }),
        );
        sig.add_map(
            "one",
            ct,
            test(|s| match s.bits.first() {
                Some(&b) => Some(b),
                None => s.total.then_some(false),
            }),
        );
        sig
    }

    pub fn base(&self, name: &str) -> Result<BasisRef, LambdaError> {
        self.bases.get(name).cloned().ok_or_else(|| LambdaError::UnknownBase(name.to_string()))
    }

    pub fn bases(&self) -> impl Iterator<Item = (&String, &BasisRef)> {
        self.bases.iter()
    }

    pub fn constants(&self) -> impl Iterator<Item = (&String, &Constant)> {
        self.consts.iter()
    }

    /// Looks up a constant, treating numerals as atoms of `N`.
    pub fn constant(&self, name: &str) -> Option<Constant> {
        if let Some(c) = self.consts.get(name) {
            return Some(c.clone());
        }
        if name.chars().all(|c| c.is_ascii_digit()) {
            let n = self.bases.get("N")?;
            let t = n.lookup(name)?;
            return Some(Constant { ty: Type::base("N"), interp: Interp::Token(t) });
        }
        None
    }

    pub fn product_basis(&self, a: &Type, b: &Type) -> Result<Arc<ProductBasis>, LambdaError> {
        let key = (a.clone(), b.clone());
        if let Some(p) = self.products.lock().unwrap().get(&key) {
            return Ok(p.clone());
        }
        let p = ProductBasis::new(self.basis_of(a)?, self.basis_of(b)?);
        self.products.lock().unwrap().insert(key, p.clone());
        Ok(p)
    }

    pub fn funspace_basis(&self, a: &Type, b: &Type) -> Result<Arc<FunSpaceBasis>, LambdaError> {
        let key = (a.clone(), b.clone());
        if let Some(f) = self.funspaces.lock().unwrap().get(&key) {
            return Ok(f.clone());
        }
        let f = FunSpaceBasis::with_limit(self.basis_of(a)?, self.basis_of(b)?, self.funspace_limit)?;
        self.funspaces.lock().unwrap().insert(key, f.clone());
        Ok(f)
    }

    /// The finite basis of a type. Arrow types build function spaces and
    /// may hit the size guard.
    pub fn basis_of(&self, ty: &Type) -> Result<BasisRef, LambdaError> {
        Ok(match ty {
            Type::Base(n) => self.base(n)?,
            Type::Prod(a, b) => self.product_basis(a, b)?,
            Type::Arrow(a, b) => self.funspace_basis(a, b)?,
        })
    }

    /// The token of numeral `k` in `N`.
    pub fn nat(&self, k: usize) -> Option<Token> {
        self.bases.get("N")?.lookup(&k.to_string())
    }
}
