use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::element::HeckeElement;
use super::expand::Transition;
use super::kl::KlContext;
use super::murphy::MurphyTable;
use super::seminormal::SeminormalTable;
use super::HeckeError;
use crate::caps::{check_rank, CapKind};
use crate::coeff::{LaurentPoly, RationalFn};
use crate::symgroup::Permutation;

type QElt = HeckeElement<RationalFn>;

/// Per-rank caches: Kazhdan-Lusztig data, the cellular label table, the
/// cellular basis elements lifted to `Q(v)`, the seminormal tables and the
/// transition data used by basis expansion.
///
/// Everything inside is built lazily behind `OnceLock`/`Mutex`, so a
/// context can be shared freely across threads; verification sweeps
/// parallelize over elements against one shared context.
pub struct HeckeContext {
    n: usize,
    kl: KlContext,
    murphy: OnceLock<MurphyTable>,
    semi: OnceLock<SeminormalTable>,
    m_rat: Mutex<HashMap<usize, Arc<QElt>>>,
    n_rat: Mutex<HashMap<usize, Arc<QElt>>>,
    cp_rat: Mutex<HashMap<Permutation, Arc<QElt>>>,
    c_rat: Mutex<HashMap<Permutation, Arc<QElt>>>,
    f_over_m: OnceLock<Transition>,
    g_over_n: OnceLock<Transition>,
}

impl HeckeContext {
    pub fn new(n: usize) -> Result<Self, HeckeError> {
        check_rank(n, CapKind::Transition)?;
        assert!(n >= 1, "rank must be positive");
        Ok(HeckeContext {
            n,
            kl: KlContext::new(n),
            murphy: OnceLock::new(),
            semi: OnceLock::new(),
            m_rat: Mutex::new(HashMap::new()),
            n_rat: Mutex::new(HashMap::new()),
            cp_rat: Mutex::new(HashMap::new()),
            c_rat: Mutex::new(HashMap::new()),
            f_over_m: OnceLock::new(),
            g_over_n: OnceLock::new(),
        })
    }

    /// A process-wide shared context per rank.
    pub fn shared(n: usize) -> Result<Arc<HeckeContext>, HeckeError> {
        static REGISTRY: OnceLock<Mutex<HashMap<usize, Arc<HeckeContext>>>> = OnceLock::new();
        let registry = REGISTRY.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(hit) = registry.lock().unwrap().get(&n) {
            return Ok(hit.clone());
        }
        let built = Arc::new(HeckeContext::new(n)?);
        Ok(registry.lock().unwrap().entry(n).or_insert(built).clone())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kl(&self) -> &KlContext {
        &self.kl
    }

    pub fn murphy_table(&self) -> &MurphyTable {
        self.murphy.get_or_init(|| MurphyTable::new(self.n))
    }

    /// The seminormal and dual seminormal tables; rank-capped because the
    /// construction touches every label of the rank.
    pub fn seminormal(&self) -> Result<&SeminormalTable, HeckeError> {
        check_rank(self.n, CapKind::Seminormal)?;
        Ok(self.semi.get_or_init(|| SeminormalTable::new(self.murphy_table())))
    }

    pub fn murphy_rational(&self, idx: usize) -> Arc<QElt> {
        if let Some(hit) = self.m_rat.lock().unwrap().get(&idx) {
            return hit.clone();
        }
        let built = Arc::new(self.murphy_table().murphy::<RationalFn>(idx));
        self.m_rat.lock().unwrap().entry(idx).or_insert(built).clone()
    }

    pub fn dual_murphy_rational(&self, idx: usize) -> Arc<QElt> {
        if let Some(hit) = self.n_rat.lock().unwrap().get(&idx) {
            return hit.clone();
        }
        let built = Arc::new(self.murphy_table().dual_murphy::<RationalFn>(idx));
        self.n_rat.lock().unwrap().entry(idx).or_insert(built).clone()
    }

    pub fn cprime_rational(&self, w: &Permutation) -> Arc<QElt> {
        if let Some(hit) = self.cp_rat.lock().unwrap().get(w) {
            return hit.clone();
        }
        let built = Arc::new(self.kl.cprime(w).to_rational());
        self.cp_rat.lock().unwrap().entry(w.clone()).or_insert(built).clone()
    }

    pub fn c_twisted_rational(&self, w: &Permutation) -> Arc<QElt> {
        if let Some(hit) = self.c_rat.lock().unwrap().get(w) {
            return hit.clone();
        }
        let built = Arc::new(self.kl.c_twisted(w).to_rational());
        self.c_rat.lock().unwrap().entry(w.clone()).or_insert(built).clone()
    }

    /// Murphy-coordinates of every seminormal basis element.
    pub fn seminormal_over_murphy(&self) -> Result<&Transition, HeckeError> {
        if let Some(t) = self.f_over_m.get() {
            return Ok(t);
        }
        let semi = self.seminormal()?;
        let trans = Transition::new(self, &semi.f, false)?;
        Ok(self.f_over_m.get_or_init(|| trans))
    }

    /// Dual-Murphy-coordinates of every dual seminormal basis element.
    pub fn dual_seminormal_over_dual_murphy(&self) -> Result<&Transition, HeckeError> {
        if let Some(t) = self.g_over_n.get() {
            return Ok(t);
        }
        let semi = self.seminormal()?;
        let trans = Transition::new(self, &semi.g, true)?;
        Ok(self.g_over_n.get_or_init(|| trans))
    }

    /// Lifts an integral element into `Q(v)` coordinates.
    pub fn lift(&self, h: &HeckeElement<LaurentPoly>) -> QElt {
        h.to_rational()
    }
}
