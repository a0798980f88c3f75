//! Small finite fields `F_q`, `q = p^k`, with table-driven arithmetic.
//!
//! Elements are the integers `0..q`; the base-`p` digits of an element are the
//! coefficients of its polynomial in `t`, lowest degree first.

use super::GroupError;

#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn digits(mut x: u32, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    // m monic
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if c != 0 {
            for (i, &mi) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - (c * mi) % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for low in 0..count {
            let mut f = digits(low, p, d as u32);
            f.push(1);
            if poly_rem(m, &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    pub fn new(q: u32) -> Result<Self, GroupError> {
        let (p, k) = (2..=q)
            .find(|&p| is_prime(p) && q % p == 0)
            .and_then(|p| {
                let mut k = 0;
                let mut r = q;
                while r % p == 0 {
                    r /= p;
                    k += 1;
                }
                (r == 1).then_some((p, k))
            })
            .ok_or(GroupError::BadField(q))?;
        if q > 1 << 12 {
            return Err(GroupError::BadField(q));
        }
        // smallest monic irreducible, comparing coefficients from the top
        let modulus = (0..q)
            .map(|i| {
                let mut m = digits(i, p, k);
                m.push(1);
                m
            })
            .find(|m| k == 1 || is_irreducible(m, p))
            .expect("irreducible polynomial exists");
        let qs = q as usize;
        let mut add = vec![0; qs * qs];
        let mut mul = vec![0; qs * qs];
        for a in 0..q {
            let da = digits(a, p, k);
            for b in 0..q {
                let db = digits(b, p, k);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = undigits(&s, p);
                let mut prod = vec![0u32; 2 * k as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let r = if k == 1 { vec![prod[0]] } else { poly_rem(&prod, &modulus, p) };
                mul[(a * q + b) as usize] = undigits(&r, p);
            }
        }
        let neg = (0..q).map(|a| (0..q).find(|&b| add[(a * q + b) as usize] == 0).unwrap()).collect();
        let inv = (0..q)
            .map(|a| if a == 0 { 0 } else { (1..q).find(|&b| mul[(a * q + b) as usize] == 1).unwrap() })
            .collect();
        Ok(FiniteField { p, k, q, modulus, add, mul, neg, inv })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    /// Coefficients of the defining polynomial, lowest degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert_ne!(a, 0, "zero has no inverse");
        self.inv[a as usize]
    }

    /// Parses an entry such as `0`, `-1`, `t`, `t+1` or `2*t^2+1`; integers
    /// are read modulo `p`.
    pub fn parse(&self, s: &str) -> Result<u32, GroupError> {
        let bad = || GroupError::BadEntry(s.to_string());
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(bad());
        }
        let mut coeffs = vec![0i64; self.k as usize];
        let mut rest = text.as_str();
        while !rest.is_empty() {
            let (neg, body) = match rest.as_bytes()[0] {
                b'-' => (true, &rest[1..]),
                b'+' => (false, &rest[1..]),
                _ => (false, rest),
            };
            let end = body[1.min(body.len())..].find(['+', '-']).map_or(body.len(), |i| i + 1);
            let term = &body[..end];
            rest = &body[end..];
            let (c, power) = match term.split_once('t') {
                None => (term.parse::<i64>().map_err(|_| bad())?, 0),
                Some((c, pw)) => {
                    let c = match c.strip_suffix('*').unwrap_or(c) {
                        "" => 1,
                        c => c.parse::<i64>().map_err(|_| bad())?,
                    };
                    let power = match pw {
                        "" => 1,
                        pw => pw.strip_prefix('^').ok_or_else(bad)?.parse::<usize>().map_err(|_| bad())?,
                    };
                    (c, power)
                }
            };
            if power > 0 && self.k == 1 {
                return Err(bad());
            }
            let c = if neg { -c } else { c };
            if power < coeffs.len() {
                coeffs[power] += c;
            } else {
                // reduce t^power using the field multiplication
                let mut x = 1;
                for _ in 0..power {
                    x = self.mul(x, self.p);
                }
                let cm = (c.rem_euclid(self.p as i64)) as u32;
                let mut scaled = 0;
                for _ in 0..cm {
                    scaled = self.add(scaled, x);
                }
                let d = digits(scaled, self.p, self.k);
                for (i, v) in d.iter().enumerate() {
                    coeffs[i] += *v as i64;
                }
            }
        }
        let d: Vec<u32> = coeffs.iter().map(|c| c.rem_euclid(self.p as i64) as u32).collect();
        Ok(undigits(&d, self.p))
    }

    /// Inverse of [`FiniteField::parse`] for display.
    pub fn format(&self, a: u32) -> String {
        let d = digits(a, self.p, self.k);
        let mut terms = Vec::new();
        for (i, &c) in d.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            terms.push(match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "t".into(),
                (1, c) => format!("{c}*t"),
                (i, 1) => format!("t^{i}"),
                (i, c) => format!("{c}*t^{i}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moduli() {
        assert_eq!(FiniteField::new(4).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(FiniteField::new(9).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(FiniteField::new(8).unwrap().modulus(), &[1, 1, 0, 1]);
        assert!(FiniteField::new(6).is_err());
        assert!(FiniteField::new(1).is_err());
    }

    #[test]
    fn field_axioms() {
        for q in [2, 3, 4, 5, 7, 8, 9, 25, 27] {
            let f = FiniteField::new(q).unwrap();
            for a in 0..q {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in 0..q {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q.min(9) {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    }
                }
            }
            // multiplicative group is cyclic of order q-1: some element has that order
            let has_generator = (1..q).any(|g| {
                let mut x = g;
                let mut ord = 1;
                while x != 1 {
                    x = f.mul(x, g);
                    ord += 1;
                }
                ord == q - 1
            });
            assert!(has_generator, "q = {q}");
        }
    }

    #[test]
    fn parse_entries() {
        let f = FiniteField::new(9).unwrap();
        let t = f.parse("t").unwrap();
        assert_eq!(t, 3);
        assert_eq!(f.mul(t, t), f.parse("-1").unwrap());
        assert_eq!(f.parse("t^2").unwrap(), f.parse("2").unwrap());
        assert_eq!(f.parse("2*t+1").unwrap(), 7);
        assert_eq!(f.parse("-t").unwrap(), f.neg(t));
        for a in 0..9 {
            assert_eq!(f.parse(&f.format(a)).unwrap(), a);
        }
        let f4 = FiniteField::new(4).unwrap();
        let t = f4.parse("t").unwrap();
        assert_eq!(f4.mul(t, t), f4.parse("t+1").unwrap());
        let f7 = FiniteField::new(7).unwrap();
        assert_eq!(f7.parse("-1").unwrap(), 6);
        assert_eq!(f7.parse("10").unwrap(), 3);
        assert!(f7.parse("t").is_err());
        assert!(f.parse("x").is_err());
        assert!(f.parse("").is_err());
    }
}
