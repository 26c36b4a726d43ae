//! Inner code protecting the pinned payload bits carried in the parity
//! suffix of a codeword.
//!
//! The workhorse is a shortened binary BCH code with designed distance
//! `2t + 1`, systematic so the payload bits appear verbatim as a prefix.
//! A `(2t+1)`-fold repetition code is available as a fallback for payloads
//! so short that BCH shortening degenerates.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InnerError {
    /// No code with the requested payload size fits a supported field.
    PayloadTooLarge,
    /// The received word is not within distance `t` of any codeword.
    Uncorrectable,
}

impl fmt::Display for InnerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InnerError::PayloadTooLarge => write!(f, "payload exceeds supported inner code sizes"),
            InnerError::Uncorrectable => write!(f, "received word is beyond the correction radius"),
        }
    }
}

/// Primitive polynomials over GF(2), indexed by degree, bit `i` holding the
/// coefficient of `x^i`.
const PRIMITIVE: [(u32, u32); 15] = [
    (2, 0b111),
    (3, 0b1011),
    (4, 0b10011),
    (5, 0b100101),
    (6, 0b1000011),
    (7, 0b10001001),
    (8, 0b100011101),
    (9, 0b1000010001),
    (10, 0b10000001001),
    (11, 0b100000000101),
    (12, 0b1000001010011),
    (13, 0b10000000011011),
    (14, 0b100010001000011),
    (15, 0b1000000000000011),
    (16, 0b10001000000001011),
];

/// GF(2^m) with exp/log tables over a primitive element.
#[derive(Clone)]
struct Gf2m {
    m: u32,
    order: u32, // 2^m - 1
    exp: Vec<u16>,
    log: Vec<u16>,
}

impl core::fmt::Debug for Gf2m {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "Gf2m(m={})", self.m)
    }
}

impl Gf2m {
    fn new(m: u32) -> Gf2m {
        let poly = PRIMITIVE
            .iter()
            .find(|&&(deg, _)| deg == m)
            .expect("supported field degree")
            .1;
        let order = (1u32 << m) - 1;
        let mut exp = vec![0u16; order as usize];
        let mut log = vec![u16::MAX; (order + 1) as usize];
        let mut cur = 1u32;
        for i in 0..order {
            exp[i as usize] = cur as u16;
            debug_assert_eq!(log[cur as usize], u16::MAX, "element cycle repeats early");
            log[cur as usize] = i as u16;
            cur <<= 1;
            if cur & (1 << m) != 0 {
                cur ^= poly;
            }
        }
        debug_assert_eq!(cur, 1, "polynomial is not primitive");
        Gf2m { m, order, exp, log }
    }

    fn mul(&self, a: u16, b: u16) -> u16 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = self.log[a as usize] as u32 + self.log[b as usize] as u32;
        self.exp[(s % self.order) as usize]
    }

    fn inv(&self, a: u16) -> u16 {
        debug_assert!(a != 0);
        let l = self.log[a as usize] as u32;
        self.exp[((self.order - l) % self.order) as usize]
    }

    /// alpha^e for any signed-free exponent.
    fn alpha_pow(&self, e: u64) -> u16 {
        self.exp[(e % self.order as u64) as usize]
    }
}

/// Shortened systematic binary BCH code with designed distance `2t + 1`.
#[derive(Clone, Debug)]
pub struct BchCode {
    t: usize,
    data_len: usize,
    code_len: usize,
    gen: Vec<u8>, // g_0 .. g_{r-1}; the leading coefficient g_r = 1 is implicit
    gf: Gf2m,
}

impl BchCode {
    pub fn new(data_len: usize, t: usize) -> Result<BchCode, InnerError> {
        assert!(t >= 1 && data_len >= 1);
        let m = PRIMITIVE
            .iter()
            .map(|&(deg, _)| deg)
            .find(|&deg| data_len as u64 + t as u64 * deg as u64 <= (1u64 << deg) - 1)
            .ok_or(InnerError::PayloadTooLarge)?;
        let gf = Gf2m::new(m);
        let gen = Self::generator(&gf, t);
        let r = gen.len();
        let code_len = data_len + r;
        debug_assert!(code_len as u64 <= (1u64 << m) - 1);
        Ok(BchCode { t, data_len, code_len, gen, gf })
    }

    /// Product of the minimal polynomials of alpha^1 .. alpha^{2t}; returned
    /// without its leading coefficient.
    fn generator(gf: &Gf2m, t: usize) -> Vec<u8> {
        let order = gf.order as u64;
        let mut covered = vec![false; gf.order as usize];
        let mut g = vec![1u8]; // constant polynomial 1
        for j in 1..=(2 * t as u64) {
            let lead = (j % order) as usize;
            if covered[lead] {
                continue;
            }
            // Cyclotomic coset of j: exponents j * 2^k mod (2^m - 1).
            let mut coset = Vec::new();
            let mut e = lead;
            loop {
                coset.push(e);
                covered[e] = true;
                e = (e * 2) % gf.order as usize;
                if e == lead {
                    break;
                }
            }
            // Minimal polynomial: product of (x + alpha^c) over the coset.
            let mut mp: Vec<u16> = vec![1];
            for &c in &coset {
                let a = gf.exp[c];
                let mut next = vec![0u16; mp.len() + 1];
                for (i, &coef) in mp.iter().enumerate() {
                    next[i + 1] ^= coef;
                    next[i] ^= gf.mul(a, coef);
                }
                mp = next;
            }
            debug_assert!(mp.iter().all(|&c| c <= 1), "minimal polynomial not binary");
            // Multiply g by mp over GF(2).
            let mut next = vec![0u8; g.len() + mp.len() - 1];
            for (i, &gi) in g.iter().enumerate() {
                if gi == 0 {
                    continue;
                }
                for (k, &mk) in mp.iter().enumerate() {
                    next[i + k] ^= mk as u8;
                }
            }
            g = next;
        }
        debug_assert_eq!(*g.last().unwrap(), 1);
        g.pop();
        g
    }

    pub fn data_len(&self) -> usize {
        self.data_len
    }

    pub fn code_len(&self) -> usize {
        self.code_len
    }

    pub fn parity_len(&self) -> usize {
        self.gen.len()
    }

    /// Bit index -> exponent in the codeword polynomial. Data bit `i` holds
    /// the coefficient of `x^{r+i}`, parity bit `j` that of `x^j`.
    fn bit_exponent(&self, idx: usize) -> usize {
        let r = self.gen.len();
        if idx < self.data_len {
            r + idx
        } else {
            idx - self.data_len
        }
    }

    fn bit_index(&self, exponent: usize) -> usize {
        let r = self.gen.len();
        if exponent >= r {
            exponent - r
        } else {
            self.data_len + exponent
        }
    }

    pub fn encode(&self, data: &[u8]) -> Vec<u8> {
        assert_eq!(data.len(), self.data_len);
        let r = self.gen.len();
        // Remainder of data(x) * x^r modulo g(x) via the usual feedback
        // register, feeding the highest-degree coefficient first.
        let mut reg = vec![0u8; r];
        for i in (0..self.data_len).rev() {
            let fb = reg[r - 1] ^ data[i];
            for j in (1..r).rev() {
                reg[j] = reg[j - 1];
            }
            reg[0] = 0;
            if fb == 1 {
                for j in 0..r {
                    reg[j] ^= self.gen[j];
                }
            }
        }
        let mut out = Vec::with_capacity(self.code_len);
        out.extend_from_slice(data);
        out.extend_from_slice(&reg);
        out
    }

    fn syndromes(&self, word: &[u8]) -> Vec<u16> {
        (1..=2 * self.t as u64)
            .map(|j| {
                let mut s = 0u16;
                for (idx, &b) in word.iter().enumerate() {
                    if b == 1 {
                        s ^= self.gf.alpha_pow(j * self.bit_exponent(idx) as u64);
                    }
                }
                s
            })
            .collect()
    }

    /// Corrects up to `t` substitutions, returning the payload bits.
    pub fn decode(&self, received: &[u8]) -> Result<Vec<u8>, InnerError> {
        assert_eq!(received.len(), self.code_len);
        let synd = self.syndromes(received);
        if synd.iter().all(|&s| s == 0) {
            return Ok(received[..self.data_len].to_vec());
        }
        let lambda = self.error_locator(&synd);
        let degree = lambda.len() - 1;
        if degree > self.t {
            return Err(InnerError::Uncorrectable);
        }
        // Chien search over the shortened positions: an error at exponent e
        // makes alpha^{-e} a root of the locator.
        let mut word = received.to_vec();
        let mut roots = 0usize;
        for e in 0..self.code_len {
            let x = self.gf.alpha_pow(((self.gf.order as usize - e % self.gf.order as usize) % self.gf.order as usize) as u64);
            let mut acc = 0u16;
            let mut xp = 1u16;
            for &c in &lambda {
                acc ^= self.gf.mul(c, xp);
                xp = self.gf.mul(xp, x);
            }
            if acc == 0 {
                word[self.bit_index(e)] ^= 1;
                roots += 1;
            }
        }
        if roots != degree || self.syndromes(&word).iter().any(|&s| s != 0) {
            return Err(InnerError::Uncorrectable);
        }
        Ok(word[..self.data_len].to_vec())
    }

    /// Berlekamp-Massey over GF(2^m); returns the minimal connection
    /// polynomial with constant term 1.
    fn error_locator(&self, synd: &[u16]) -> Vec<u16> {
        let n = synd.len();
        let mut c = vec![0u16; n + 1];
        let mut b = vec![0u16; n + 1];
        c[0] = 1;
        b[0] = 1;
        let mut l = 0usize;
        let mut shift = 1usize;
        let mut last_d = 1u16;
        for i in 0..n {
            let mut d = synd[i];
            for j in 1..=l {
                d ^= self.gf.mul(c[j], synd[i - j]);
            }
            if d == 0 {
                shift += 1;
            } else {
                let coef = self.gf.mul(d, self.gf.inv(last_d));
                if 2 * l <= i {
                    let prev = c.clone();
                    for j in 0..=(n - shift) {
                        c[j + shift] ^= self.gf.mul(coef, b[j]);
                    }
                    l = i + 1 - l;
                    b = prev;
                    last_d = d;
                    shift = 1;
                } else {
                    for j in 0..=(n - shift) {
                        c[j + shift] ^= self.gf.mul(coef, b[j]);
                    }
                    shift += 1;
                }
            }
        }
        c.truncate(l + 1);
        c
    }
}

/// `(2t+1)`-fold repetition: block copies, so the payload is a verbatim
/// prefix; majority vote corrects up to `t` substitutions.
#[derive(Clone, Debug)]
pub struct RepetitionCode {
    t: usize,
    data_len: usize,
}

impl RepetitionCode {
    pub fn new(data_len: usize, t: usize) -> RepetitionCode {
        assert!(t >= 1 && data_len >= 1);
        RepetitionCode { t, data_len }
    }

    pub fn data_len(&self) -> usize {
        self.data_len
    }

    pub fn code_len(&self) -> usize {
        self.data_len * (2 * self.t + 1)
    }

    pub fn encode(&self, data: &[u8]) -> Vec<u8> {
        assert_eq!(data.len(), self.data_len);
        let mut out = Vec::with_capacity(self.code_len());
        for _ in 0..(2 * self.t + 1) {
            out.extend_from_slice(data);
        }
        out
    }

    pub fn decode(&self, received: &[u8]) -> Vec<u8> {
        assert_eq!(received.len(), self.code_len());
        (0..self.data_len)
            .map(|i| {
                let ones: usize = (0..(2 * self.t + 1))
                    .map(|c| received[c * self.data_len + i] as usize)
                    .sum();
                (ones > self.t) as u8
            })
            .collect()
    }
}

/// The inner code actually wired into a codec instance.
#[derive(Clone, Debug)]
pub enum InnerCode {
    Bch(BchCode),
    Repetition(RepetitionCode),
}

impl InnerCode {
    pub fn data_len(&self) -> usize {
        match self {
            InnerCode::Bch(c) => c.data_len(),
            InnerCode::Repetition(c) => c.data_len(),
        }
    }

    pub fn code_len(&self) -> usize {
        match self {
            InnerCode::Bch(c) => c.code_len(),
            InnerCode::Repetition(c) => c.code_len(),
        }
    }

    pub fn encode(&self, data: &[u8]) -> Vec<u8> {
        match self {
            InnerCode::Bch(c) => c.encode(data),
            InnerCode::Repetition(c) => c.encode(data),
        }
    }

    pub fn decode(&self, received: &[u8]) -> Result<Vec<u8>, InnerError> {
        match self {
            InnerCode::Bch(c) => c.decode(received),
            InnerCode::Repetition(c) => Ok(c.decode(received)),
        }
    }
}
