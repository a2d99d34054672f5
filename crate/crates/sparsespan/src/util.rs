//! Small shared utilities: the deterministic RNG, exact rationals, and
//! word-level bit row helpers used by the adjacency matrices.

/// SplitMix64: the 64-bit deterministic generator used everywhere a seed
/// appears. Identical seeds produce identical streams on every platform,
/// which the reproducibility guarantees rely on.
#[derive(Debug, Clone)]
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform value in `[0, bound)` by 128-bit multiply; `bound` must be nonzero.
    pub fn below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        (((self.next_u64() as u128) * (bound as u128)) >> 64) as u64
    }

    pub fn coin(&mut self) -> bool {
        self.next_u64() & 1 == 1
    }

    /// True with probability num/den.
    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.below(den) < num
    }
}

/// Exact rational with i64 parts; comparisons cross-multiply in i128 so the
/// threshold parameters (e.g. 7(k+Δ)/3) never wobble through floats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Frac {
    num: i64,
    den: i64, // > 0
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs().max(1)
    } else {
        gcd(b, a % b)
    }
}

impl Frac {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let sign = if den < 0 { -1 } else { 1 };
        let g = gcd(num, den);
        Frac { num: sign * num / g, den: sign * den / g }
    }

    pub fn int(v: i64) -> Self {
        Frac { num: v, den: 1 }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn mul_int(&self, v: i64) -> Frac {
        Frac::new(self.num * v, self.den)
    }

    pub fn div_int(&self, v: i64) -> Frac {
        assert!(v != 0);
        Frac::new(self.num, self.den * v)
    }

    pub fn add(&self, other: Frac) -> Frac {
        Frac::new(
            self.num * other.den + other.num * self.den,
            self.den * other.den,
        )
    }
}

impl PartialOrd for Frac {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Frac {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let lhs = (self.num as i128) * (other.den as i128);
        let rhs = (other.num as i128) * (self.den as i128);
        lhs.cmp(&rhs)
    }
}

impl std::fmt::Display for Frac {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Bit-row helpers. Rows are `words` u64 words long; vertex v lives in
/// word v/64, bit v%64.
pub mod bits {
    pub fn words_for(n: usize) -> usize {
        n.div_ceil(64)
    }

    pub fn set(row: &mut [u64], i: usize) {
        row[i / 64] |= 1u64 << (i % 64);
    }

    pub fn clear(row: &mut [u64], i: usize) {
        row[i / 64] &= !(1u64 << (i % 64));
    }

    pub fn get(row: &[u64], i: usize) -> bool {
        row[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count_and(a: &[u64], b: &[u64]) -> usize {
        a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
    }

    pub fn count_and3(a: &[u64], b: &[u64], c: &[u64]) -> usize {
        a.iter()
            .zip(b)
            .zip(c)
            .map(|((x, y), z)| (x & y & z).count_ones() as usize)
            .sum()
    }

    pub fn count(a: &[u64]) -> usize {
        a.iter().map(|x| x.count_ones() as usize).sum()
    }

    /// Iterate set bit indices in ascending order.
    pub fn iter_ones(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
        row.iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + b)
            })
        })
    }
}
