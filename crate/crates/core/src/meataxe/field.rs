//! Table-driven arithmetic on `u16` field elements for the dense kernels.

use crate::error::{input, Result};
use crate::exactalg::FField;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Largest field the MeatAxe kernels accept.
pub const MAX_MTX_ORDER: u64 = 4096;

const MUL_TABLE_LIMIT: usize = 256;

pub struct MtxField {
    ff: Arc<FField>,
    q: usize,
    /// Characteristic when the field is prime, else 0.
    p: u32,
    add: Vec<u16>,
    mul: Vec<u16>,
    log: Vec<u32>,
    exp: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

impl std::fmt::Debug for MtxField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.ff)
    }
}

impl MtxField {
    pub fn get(ff: &Arc<FField>) -> Result<Arc<MtxField>> {
        static CACHE: OnceLock<Mutex<HashMap<(u64, u32), Arc<MtxField>>>> = OnceLock::new();
        let key = (ff.characteristic(), ff.degree());
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(f) = cache.lock().unwrap().get(&key) {
            return Ok(f.clone());
        }
        if ff.order() > MAX_MTX_ORDER {
            return input(format!("{ff:?} is too large for the meataxe kernels (limit {MAX_MTX_ORDER})"));
        }
        let f = Arc::new(Self::build(ff.clone()));
        cache.lock().unwrap().insert(key, f.clone());
        Ok(f)
    }

    fn build(ff: Arc<FField>) -> Self {
        let q = ff.order() as usize;
        let p = if ff.is_prime_field() { q as u32 } else { 0 };
        let add = if p == 0 {
            let mut t = vec![0u16; q * q];
            for a in 0..q {
                for b in 0..q {
                    t[a * q + b] = ff.add(a as u32, b as u32) as u16;
                }
            }
            t
        } else {
            Vec::new()
        };
        let mul = if q <= MUL_TABLE_LIMIT {
            let mut t = vec![0u16; q * q];
            for a in 0..q {
                for b in 0..q {
                    t[a * q + b] = ff.mul(a as u32, b as u32) as u16;
                }
            }
            t
        } else {
            Vec::new()
        };
        let g = ff.generator_raw();
        let mut exp = vec![0u16; 2 * q];
        let mut log = vec![0u32; q];
        let mut x = 1u32;
        for k in 0..q - 1 {
            exp[k] = x as u16;
            exp[k + q - 1] = x as u16;
            log[x as usize] = k as u32;
            x = ff.mul(x, g);
        }
        let neg = (0..q as u32).map(|a| ff.neg(a) as u16).collect();
        let inv = (0..q as u32).map(|a| if a == 0 { 0 } else { ff.inv(a) as u16 }).collect();
        MtxField { ff, q, p, add, mul, log, exp, neg, inv }
    }

    pub fn ffield(&self) -> &Arc<FField> {
        &self.ff
    }

    pub fn order(&self) -> usize {
        self.q
    }

    #[inline(always)]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        if self.p != 0 {
            let s = a as u32 + b as u32;
            (if s >= self.p { s - self.p } else { s }) as u16
        } else {
            self.add[a as usize * self.q + b as usize]
        }
    }

    #[inline(always)]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        if !self.mul.is_empty() {
            self.mul[a as usize * self.q + b as usize]
        } else if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    #[inline(always)]
    pub fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }

    #[inline(always)]
    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg(b))
    }

    #[inline(always)]
    pub fn inv(&self, a: u16) -> u16 {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }

    pub fn from_raw(&self, raw: u32) -> u16 {
        debug_assert!((raw as usize) < self.q);
        raw as u16
    }

    /// `y += c x`.
    pub fn axpy(&self, y: &mut [u16], c: u16, x: &[u16]) {
        if c == 0 {
            return;
        }
        debug_assert_eq!(y.len(), x.len());
        let q = self.q;
        if !self.mul.is_empty() {
            let row = &self.mul[c as usize * q..(c as usize + 1) * q];
            if self.p != 0 {
                let p = self.p as u16;
                for (a, &b) in y.iter_mut().zip(x) {
                    let s = *a + row[b as usize];
                    *a = if s >= p { s - p } else { s };
                }
            } else {
                for (a, &b) in y.iter_mut().zip(x) {
                    *a = self.add[*a as usize * q + row[b as usize] as usize];
                }
            }
        } else {
            let lc = self.log[c as usize];
            for (a, &b) in y.iter_mut().zip(x) {
                if b != 0 {
                    let m = self.exp[(lc + self.log[b as usize]) as usize];
                    *a = self.add(*a, m);
                }
            }
        }
    }

    /// `y *= c`.
    pub fn scale(&self, y: &mut [u16], c: u16) {
        for a in y.iter_mut() {
            *a = self.mul(*a, c);
        }
    }

    pub fn dot(&self, x: &[u16], y: &[u16]) -> u16 {
        let mut acc = 0u16;
        for (&a, &b) in x.iter().zip(y) {
            if a != 0 && b != 0 {
                acc = self.add(acc, self.mul(a, b));
            }
        }
        acc
    }
}
