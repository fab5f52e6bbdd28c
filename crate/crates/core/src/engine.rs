//! Parameter choice and memoisation shared by the Jack, Bessel and moment
//! computations.

use crate::bessel::BesselPolynomial;
use crate::exact::{GammaProduct, ParamRational, Rational};
use crate::jack::JackExpansion;
use crate::partition::Partition;
use crate::sympoly::SymmetricPolynomial;
use crate::Result;
use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, OnceLock, RwLock};

/// Values for `a` and κ; `None` keeps the parameter symbolic.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Params {
    pub a: Option<Rational>,
    pub kappa: Option<Rational>,
}

impl Params {
    pub fn symbolic() -> Self {
        Self::default()
    }

    pub fn new(a: Option<Rational>, kappa: Option<Rational>) -> Self {
        Params { a, kappa }
    }

    pub fn is_symbolic(&self) -> bool {
        self.a.is_none() && self.kappa.is_none()
    }

    /// `a` as a field element (the symbol or its value).
    pub fn a_value(&self) -> ParamRational {
        self.a
            .clone()
            .map(ParamRational::from_rational)
            .unwrap_or_else(ParamRational::a)
    }

    pub fn k_value(&self) -> ParamRational {
        self.kappa
            .clone()
            .map(ParamRational::from_rational)
            .unwrap_or_else(ParamRational::k)
    }

    pub fn apply(&self, v: &ParamRational) -> Result<ParamRational> {
        v.specialize(self.a.as_ref(), self.kappa.as_ref())
    }

    pub fn apply_gamma(&self, g: &GammaProduct) -> Result<GammaProduct> {
        if self.is_symbolic() {
            return Ok(g.normalize());
        }
        g.specialize(self.a.as_ref(), self.kappa.as_ref())
    }
}

pub(crate) struct Memo<K, V> {
    map: RwLock<HashMap<K, Arc<V>>>,
}

impl<K: Hash + Eq + Clone, V> Memo<K, V> {
    fn new() -> Self {
        Memo {
            map: RwLock::new(HashMap::new()),
        }
    }

    /// Concurrent readers; a racing writer computes the same value, and the
    /// first insertion wins.
    pub(crate) fn get_or_try(&self, key: &K, make: impl FnOnce() -> Result<V>) -> Result<Arc<V>> {
        if let Some(v) = self.map.read().unwrap().get(key) {
            return Ok(v.clone());
        }
        let v = Arc::new(make()?);
        Ok(self
            .map
            .write()
            .unwrap()
            .entry(key.clone())
            .or_insert(v)
            .clone())
    }

    pub(crate) fn len(&self) -> usize {
        self.map.read().unwrap().len()
    }
}

type Key = (Partition, usize);

/// Memoising engine for one choice of parameters.
pub struct Engine {
    params: Params,
    pub(crate) jack: Memo<Key, SymmetricPolynomial>,
    pub(crate) db_jack: Memo<Key, JackExpansion>,
    pub(crate) bessel: Memo<Key, BesselPolynomial>,
    pub(crate) monomial_in_jack: Memo<Key, JackExpansion>,
    pub(crate) moment_ratio: Memo<Key, ParamRational>,
    pub(crate) moment_functional: Memo<Key, ParamRational>,
}

impl Engine {
    pub fn new(params: Params) -> Self {
        Engine {
            params,
            jack: Memo::new(),
            db_jack: Memo::new(),
            bessel: Memo::new(),
            monomial_in_jack: Memo::new(),
            moment_ratio: Memo::new(),
            moment_functional: Memo::new(),
        }
    }

    /// Process-wide engine with both parameters symbolic.
    pub fn symbolic() -> &'static Engine {
        static GLOBAL: OnceLock<Engine> = OnceLock::new();
        GLOBAL.get_or_init(|| Engine::new(Params::symbolic()))
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    /// Number of memoised Jack and Bessel polynomials.
    pub fn cache_sizes(&self) -> (usize, usize) {
        (self.jack.len(), self.bessel.len())
    }
}
