use crate::error::{input, Result};

/// Finite field GF(q) with elements encoded as `0..q`. Prime fields use
/// modular arithmetic; the prime powers 4, 8, 9 and 16 use polynomial
/// arithmetic modulo a fixed irreducible, with the base-p digits of an
/// element's code as its coefficients.
#[derive(Clone, Debug)]
pub struct Field {
    q: usize,
    p: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
}

// monic irreducible polynomials, coefficients from the constant term up
// (the leading 1 omitted)
const IRREDUCIBLE: &[(usize, usize, &[usize])] = &[
    (4, 2, &[1, 1]),       // x^2 + x + 1
    (8, 2, &[1, 1, 0]),    // x^3 + x + 1
    (9, 3, &[1, 0]),       // x^2 + 1
    (16, 2, &[1, 1, 0, 0]), // x^4 + x + 1
];

fn smallest_prime_factor(q: usize) -> usize {
    (2..).find(|d| q % d == 0 || d * d > q).map(|d| if q % d == 0 { d } else { q }).unwrap()
}

impl Field {
    pub fn new(q: usize) -> Result<Field> {
        if q < 2 {
            return input(format!("q={q} is not a prime power"));
        }
        let p = smallest_prime_factor(q);
        if p == q {
            return Ok(Self::prime(q));
        }
        match IRREDUCIBLE.iter().find(|(qq, _, _)| *qq == q) {
            Some(&(_, p, poly)) => Ok(Self::extension(q, p, poly)),
            None => input(format!("q={q} is not a supported prime power (primes, 4, 8, 9, 16)")),
        }
    }

    fn prime(q: usize) -> Field {
        // tables are only materialised for small q; large primes use `%`
        if q <= 256 {
            let mut add = vec![0u16; q * q];
            let mut mul = vec![0u16; q * q];
            for a in 0..q {
                for b in 0..q {
                    add[a * q + b] = ((a + b) % q) as u16;
                    mul[a * q + b] = ((a * b) % q) as u16;
                }
            }
            Field { q, p: q, add, mul }
        } else {
            Field { q, p: q, add: Vec::new(), mul: Vec::new() }
        }
    }

    fn extension(q: usize, p: usize, poly: &[usize]) -> Field {
        let m = poly.len();
        let digits = |mut x: usize| -> Vec<usize> {
            (0..m)
                .map(|_| {
                    let d = x % p;
                    x /= p;
                    d
                })
                .collect()
        };
        let encode = |c: &[usize]| c.iter().rev().fold(0, |acc, &d| acc * p + d);
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<usize> = (0..m).map(|i| (da[i] + db[i]) % p).collect();
                add[a * q + b] = encode(&sum) as u16;
                let mut prod = vec![0usize; 2 * m - 1];
                for i in 0..m {
                    for j in 0..m {
                        prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
                    }
                }
                // reduce with x^m = -(poly)
                for deg in (m..2 * m - 1).rev() {
                    let c = prod[deg];
                    if c != 0 {
                        prod[deg] = 0;
                        for (i, &pc) in poly.iter().enumerate() {
                            let t = deg - m + i;
                            prod[t] = (prod[t] + (p - c) * pc) % p;
                        }
                    }
                }
                mul[a * q + b] = encode(&prod[..m]) as u16;
            }
        }
        Field { q, p, add, mul }
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        if self.add.is_empty() {
            (a + b) % self.q
        } else {
            self.add[a * self.q + b] as usize
        }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        if self.mul.is_empty() {
            (a * b) % self.q
        } else {
            self.mul[a * self.q + b] as usize
        }
    }

    pub fn neg(&self, a: usize) -> usize {
        (0..self.q).find(|&b| self.add(a, b) == 0).unwrap()
    }

    pub fn inv(&self, a: usize) -> Option<usize> {
        if a == 0 {
            return None;
        }
        if self.mul.is_empty() {
            // Fermat: a^(q-2)
            let (mut base, mut e, mut acc) = (a as u128, self.q as u128 - 2, 1u128);
            while e > 0 {
                if e & 1 == 1 {
                    acc = acc * base % self.q as u128;
                }
                base = base * base % self.q as u128;
                e >>= 1;
            }
            return Some(acc as usize);
        }
        (1..self.q).find(|&b| self.mul(a, b) == 1)
    }
}
