//! Finite field arithmetic for coefficient domains F_p and F_{p^k}.
//!
//! Elements are packed into a `u64` as base-p digits of the residue polynomial
//! (for a prime field this is just the residue). All operations go through a
//! `Field` descriptor so polynomials over different fields cannot be mixed
//! silently.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

pub type Elem = u64;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Field {
    p: u64,
    /// Monic modulus of an extension field, as coefficients c_0..c_k with
    /// c_k = 1; `None` for the prime field.
    ext: Option<Vec<u64>>,
}

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        if p < 2 || !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        Ok(Field { p, ext: None })
    }

    /// F_4 = F_2[w]/(w^2+w+1); elements 0, 1, 2=w, 3=w+1.
    pub fn gf4() -> Self {
        Field {
            p: 2,
            ext: Some(vec![1, 1, 1]),
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.ext.as_ref().map_or(1, |m| (m.len() - 1) as u32)
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.extension_degree())
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        1
    }

    pub fn from_int(&self, n: i64) -> Elem {
        let p = self.p as i64;
        (n.rem_euclid(p)) as Elem
    }

    fn digits(&self, a: Elem) -> Vec<u64> {
        let k = self.extension_degree() as usize;
        let mut a = a;
        let mut d = vec![0u64; k];
        for di in d.iter_mut() {
            *di = a % self.p;
            a /= self.p;
        }
        d
    }

    fn pack(&self, d: &[u64]) -> Elem {
        let mut a = 0u64;
        for &di in d.iter().rev() {
            a = a * self.p + di % self.p;
        }
        a
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.ext {
            None => (a + b) % self.p,
            Some(_) => {
                let (da, db) = (self.digits(a), self.digits(b));
                let d: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
                self.pack(&d)
            }
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        match &self.ext {
            None => (self.p - a % self.p) % self.p,
            Some(_) => {
                let d: Vec<u64> = self
                    .digits(a)
                    .iter()
                    .map(|x| (self.p - x) % self.p)
                    .collect();
                self.pack(&d)
            }
        }
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.ext {
            None => a * b % self.p,
            Some(m) => {
                let k = m.len() - 1;
                let (da, db) = (self.digits(a), self.digits(b));
                let mut prod = vec![0u64; 2 * k];
                for (i, &x) in da.iter().enumerate() {
                    for (j, &y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % self.p;
                    }
                }
                // reduce by the monic modulus
                for i in (k..2 * k).rev() {
                    let c = prod[i];
                    if c != 0 {
                        prod[i] = 0;
                        for (j, &mj) in m.iter().enumerate().take(k) {
                            let idx = i - k + j;
                            prod[idx] = (prod[idx] + c * ((self.p - mj % self.p) % self.p)) % self.p;
                        }
                    }
                }
                self.pack(&prod[..k])
            }
        }
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::Invalid("division by zero in field".into()));
        }
        Ok(self.pow(a, self.order() - 2))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f3 = Field::prime(3).unwrap();
        assert_eq!(f3.add(2, 2), 1);
        assert_eq!(f3.neg(1), 2);
        assert_eq!(f3.mul(2, 2), 1);
        assert_eq!(f3.inv(2).unwrap(), 2);
        assert!(Field::prime(4).is_err());
    }

    #[test]
    fn gf4_table() {
        let f = Field::gf4();
        let w = 2; // w
        assert_eq!(f.mul(w, w), 3); // w^2 = w + 1
        assert_eq!(f.mul(w, 3), 1); // w * (w+1) = 1
        assert_eq!(f.add(w, 3), 1);
        // every nonzero element has an inverse
        for a in 1..4u64 {
            let inv = f.inv(a).unwrap();
            assert_eq!(f.mul(a, inv), 1);
        }
    }

    #[test]
    fn frobenius_is_additive_in_gf4() {
        let f = Field::gf4();
        for a in 0..4u64 {
            for b in 0..4u64 {
                assert_eq!(
                    f.pow(f.add(a, b), 2),
                    f.add(f.pow(a, 2), f.pow(b, 2))
                );
            }
        }
    }
}
