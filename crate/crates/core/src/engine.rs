//! Cache-aware access to groups, tables, Schur elements and counts, shared
//! by the command-line tool and the Python module.

use crate::cache::Cache;
use crate::chartable::{schur_elements, CachedTable, CharacterTable, SchurData};
use crate::counting::{has_table_model, Char0, Counter};
use crate::error::Result;
use crate::exactalg::EParam;
use crate::rootsys::{build_group, CoxeterDatum, GroupRecord, WeylGroup, DEFAULT_MAX_ORDER};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct Engine {
    pub cache: Option<Cache>,
    pub seed: u64,
    pub max_order: u64,
}

impl Default for Engine {
    fn default() -> Self {
        Engine { cache: None, seed: 0, max_order: DEFAULT_MAX_ORDER }
    }
}

#[derive(Serialize, Deserialize)]
struct CachedChar0 {
    count: usize,
    provenance: String,
    primes: Vec<u64>,
}

fn provenance_str(s: &str) -> &'static str {
    match s {
        "semisimple" => "semisimple",
        "character-table" => "character-table",
        _ => "stabilized-modular",
    }
}

impl Engine {
    pub fn new(cache: Option<Cache>, seed: u64, max_order: u64) -> Self {
        Engine { cache, seed, max_order }
    }

    pub fn group(&self, datum: &CoxeterDatum) -> Result<Arc<WeylGroup>> {
        let key = datum.to_string();
        if let Some(cache) = &self.cache {
            if let Some(rec) = cache.load::<GroupRecord>("group", &key) {
                if let Ok(g) = WeylGroup::from_record(&rec, self.max_order) {
                    return Ok(Arc::new(g));
                }
            }
        }
        let g = build_group(datum, self.max_order)?;
        if let Some(cache) = &self.cache {
            cache.store("group", &key, &g.to_record())?;
        }
        Ok(Arc::new(g))
    }

    /// The character table, or `None` for types without a model.
    pub fn table(&self, group: &WeylGroup) -> Result<Option<Arc<CharacterTable>>> {
        if !has_table_model(group.datum()) {
            return Ok(None);
        }
        let key = group.datum().to_string();
        if let Some(cache) = &self.cache {
            if let Some(c) = cache.load::<CachedTable>("chartable", &key) {
                if let Ok(t) = CharacterTable::from_cached(group, c) {
                    return Ok(Some(Arc::new(t)));
                }
            }
        }
        let t = CharacterTable::for_group(group)?;
        if let Some(cache) = &self.cache {
            cache.store("chartable", &key, &t.to_cached())?;
        }
        Ok(Some(Arc::new(t)))
    }

    /// Like [`Engine::table`] but an error for types without a model.
    pub fn require_table(&self, group: &WeylGroup) -> Result<Arc<CharacterTable>> {
        self.table(group)?.ok_or_else(|| crate::Error::NoTableModel(group.datum().to_string()))
    }

    pub fn schur(&self, group: &WeylGroup, table: &CharacterTable) -> Result<SchurData> {
        let key = group.datum().to_string();
        match &self.cache {
            Some(cache) => cache.get_or_compute("schur", &key, || schur_elements(group, table)),
            None => schur_elements(group, table),
        }
    }

    pub fn counter(&self, datum: &CoxeterDatum) -> Result<Counter> {
        let group = self.group(datum)?;
        let table = self.table(&group)?;
        Ok(Counter::new(group, table, self.seed, self.max_order))
    }

    pub fn char0(&self, counter: &Counter, e: EParam) -> Result<Char0> {
        if counter.table.is_some() || e == EParam::Infinity {
            return counter.char0(e);
        }
        let key = format!("{}-e{}-seed{}", counter.group.datum(), e, self.seed);
        let compute = || {
            let c = counter.char0(e)?;
            Ok(CachedChar0 { count: c.count, provenance: c.provenance.to_string(), primes: c.primes })
        };
        let c = match &self.cache {
            Some(cache) => cache.get_or_compute("char0", &key, compute)?,
            None => compute()?,
        };
        Ok(Char0 { count: c.count, provenance: provenance_str(&c.provenance), primes: c.primes })
    }
}
