//! Exhaustive weight searches.
//!
//! Codewords are visited in a Gray order: message positions follow the
//! modular q-ary Gray code (one position advances per step), and each
//! position's index is mapped to a field element through the modular p-ary
//! Gray code on the coefficient vector, so an advance always adds one
//! precomputed row multiple `p^i * row`. A step therefore costs one vector
//! addition.
//!
//! Work is split into independent tasks by fixing the leading free message
//! symbols; results are combined by `min`, so they do not depend on the
//! number of worker threads.

use itertools::Itertools;
use rayon::prelude::*;

use crate::gf::{Fe, Field};

use super::{CodeError, Matrix};

/// Default budget on enumerated codewords (or column subsets).
pub const DEFAULT_MAX_ENUM: u64 = 1 << 28;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_enum: u64,
    /// Worker threads; 0 uses the rayon default.
    pub threads: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_enum: DEFAULT_MAX_ENUM,
            threads: 0,
        }
    }
}

impl SearchConfig {
    pub fn check_budget(&self, needed: u128) -> Result<(), CodeError> {
        if needed > self.max_enum as u128 {
            Err(CodeError::BudgetExceeded {
                needed,
                budget: self.max_enum,
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        if self.threads == 0 {
            return f();
        }
        match rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads)
            .build()
        {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
}

fn pow_u128(q: u32, e: usize) -> u128 {
    (q as u128).checked_pow(e as u32).unwrap_or(u128::MAX)
}

trait Adder: Copy + Send + Sync {
    fn add(&self, a: u32, b: u32) -> u32;
}

#[derive(Clone, Copy)]
struct Xor;
impl Adder for Xor {
    #[inline(always)]
    fn add(&self, a: u32, b: u32) -> u32 {
        a ^ b
    }
}

#[derive(Clone, Copy)]
struct ModP(u32);
impl Adder for ModP {
    #[inline(always)]
    fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }
}

#[derive(Clone, Copy)]
struct Generic<'a>(&'a Field);
impl Adder for Generic<'_> {
    #[inline(always)]
    fn add(&self, a: u32, b: u32) -> u32 {
        self.0.add(Fe(a), Fe(b)).0
    }
}

/// Element sequence of the modular p-ary Gray code on `m` digits, together
/// with the digit that advances when going from index `v` to `v + 1 mod q`.
struct ElementGray {
    #[cfg_attr(not(test), allow(dead_code))]
    elements: Vec<u32>,
    step_digit: Vec<u8>,
}

impl ElementGray {
    fn new(p: u32, m: u32) -> Self {
        let q = p.pow(m);
        let mut elements = Vec::with_capacity(q as usize);
        let mut step_digit = Vec::with_capacity(q as usize);
        for v in 0..q {
            let d: Vec<u32> = (0..m).map(|i| (v / p.pow(i)) % p).collect();
            let mut enc = 0;
            for i in (0..m as usize).rev() {
                let next = if i + 1 < m as usize { d[i + 1] } else { 0 };
                enc = enc * p + (d[i] + p - next) % p;
            }
            elements.push(enc);
            let pos = d.iter().position(|&x| x != p - 1).unwrap_or(m as usize - 1);
            step_digit.push(pos as u8);
        }
        ElementGray {
            elements,
            step_digit,
        }
    }
}

/// All rows multiplied by each of the basis elements `p^i`, flattened.
struct ScaledRows {
    n: usize,
    m: usize,
    data: Vec<u32>,
}

impl ScaledRows {
    fn new(field: &Field, rows: &[&[Fe]]) -> Self {
        let n = rows.first().map_or(0, |r| r.len());
        let m = field.m() as usize;
        let mut data = Vec::with_capacity(rows.len() * m * n);
        for row in rows {
            for i in 0..m {
                let s = Fe(field.p().pow(i as u32));
                data.extend(row.iter().map(|&x| field.mul(s, x).0));
            }
        }
        ScaledRows { n, m, data }
    }

    #[inline]
    fn get(&self, row: usize, digit: usize) -> &[u32] {
        let start = (row * self.m + digit) * self.n;
        &self.data[start..start + self.n]
    }
}

/// One unit of work: `offset + span(rows[..free])`.
struct Task {
    offset: Vec<u32>,
    free: usize,
}

fn walk<A: Adder>(add: A, q: u32, gray: &ElementGray, scaled: &ScaledRows, task: &Task) -> usize {
    let mut word = task.offset.clone();
    let mut weight = word.iter().filter(|&&x| x != 0).count();
    let mut best = if weight > 0 { weight } else { usize::MAX };
    let f = task.free;
    if f == 0 {
        return best;
    }
    let mut counter = vec![0u32; f];
    let mut index = vec![0u32; f];
    // Odometer increment; the first non-saturated digit is the Gray position.
    while let Some(j) = counter.iter().position(|&c| c != q - 1) {
        for c in &mut counter[..j] {
            *c = 0;
        }
        counter[j] += 1;
        let v = index[j];
        let digit = gray.step_digit[v as usize] as usize;
        index[j] = if v + 1 == q { 0 } else { v + 1 };
        for (x, &s) in word.iter_mut().zip(scaled.get(j, digit)) {
            let old = *x;
            let new = add.add(old, s);
            *x = new;
            weight = weight + (new != 0) as usize - (old != 0) as usize;
        }
        if weight > 0 && weight < best {
            best = weight;
        }
    }
    best
}

/// Minimum weight over `span(base) + (span(top) \ {0})`; `base` and `top`
/// together must be linearly independent.
pub(super) fn min_weight_outside(
    field: &Field,
    n: usize,
    base: &[&[Fe]],
    top: &[&[Fe]],
    cfg: &SearchConfig,
) -> Result<usize, CodeError> {
    let q = field.q();
    let needed = pow_u128(q, base.len()).saturating_mul(pow_u128(q, top.len()).saturating_sub(1));
    cfg.check_budget(needed)?;
    if top.is_empty() {
        return Err(CodeError::EmptyDifference);
    }

    let rows: Vec<&[Fe]> = base.iter().chain(top.iter()).copied().collect();
    let scaled = ScaledRows::new(field, &rows);
    let gray = ElementGray::new(field.p(), field.m());
    let add_row = |acc: &mut [u32], row: &[Fe], s: Fe| {
        if s.is_zero() {
            return;
        }
        for (a, &x) in acc.iter_mut().zip(row) {
            *a = field.add(Fe(*a), field.mul(s, x)).0;
        }
    };

    // Leading nonzero coefficient among the top rows is at position j: the
    // word is s * top[j] + span(base, top[..j]).
    let mut specs: Vec<(usize, u32, u64, usize)> = Vec::new();
    const TARGET: u128 = 64;
    for j in 0..top.len() {
        let free = base.len() + j;
        let mut split = 0;
        while split < free && pow_u128(q, split) < TARGET {
            split += 1;
        }
        let prefixes = pow_u128(q, split) as u64;
        for s in 1..q {
            for pre in 0..prefixes {
                specs.push((j, s, pre, split));
            }
        }
    }

    let build = |&(j, s, pre, split): &(usize, u32, u64, usize)| -> Task {
        let free = base.len() + j;
        let mut offset = vec![0u32; n];
        add_row(&mut offset, top[j], Fe(s));
        let mut rest = pre;
        for row in &rows[free - split..free] {
            let digit = (rest % q as u64) as u32;
            rest /= q as u64;
            add_row(&mut offset, row, Fe(digit));
        }
        Task {
            offset,
            free: free - split,
        }
    };

    let run = |task: &Task| -> usize {
        if field.p() == 2 {
            walk(Xor, q, &gray, &scaled, task)
        } else if field.m() == 1 {
            walk(ModP(q), q, &gray, &scaled, task)
        } else {
            walk(Generic(field), q, &gray, &scaled, task)
        }
    };

    let best = cfg.install(|| {
        specs
            .par_iter()
            .map(|spec| run(&build(spec)))
            .min()
            .unwrap_or(usize::MAX)
    });
    debug_assert!(best != usize::MAX);
    Ok(best)
}

/// A smallest linearly dependent set of columns of a generator matrix,
/// i.e. a minimum-weight word of the dual code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependentColumns {
    /// Minimum distance of the dual code.
    pub weight: usize,
    /// A dual codeword of that weight.
    pub witness: Vec<Fe>,
    /// Whether the witness satisfies the caller's preference.
    pub preferred: bool,
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Scan column subsets by increasing size until one is dependent. Every
/// dependent subset of the smallest size supports a unique (up to scaling)
/// dual word. Among those, the first witness accepted by `prefer` is
/// returned; otherwise the first one found.
pub(super) fn smallest_dependent_columns<P>(
    gen: &Matrix,
    cfg: &SearchConfig,
    prefer: P,
) -> Result<Option<DependentColumns>, CodeError>
where
    P: Fn(&[Fe]) -> bool,
{
    let (k, n) = (gen.nrows(), gen.ncols());
    let field = gen.field();
    let mut spent = 0u128;
    for w in 1..=n.min(k + 1) {
        spent += binomial(n, w);
        cfg.check_budget(spent)?;
        let mut first: Option<Vec<Fe>> = None;
        for cols in (0..n).combinations(w) {
            let sub = gen.select_columns(&cols);
            let ns = sub.nullspace();
            if ns.nrows() == 0 {
                continue;
            }
            let mut witness = vec![Fe::ZERO; n];
            for (&c, &x) in cols.iter().zip(ns.row(0)) {
                witness[c] = x;
            }
            debug_assert!(witness.iter().all(|x| field.check(*x).is_ok()));
            if prefer(&witness) {
                return Ok(Some(DependentColumns {
                    weight: w,
                    witness,
                    preferred: true,
                }));
            }
            first.get_or_insert(witness);
        }
        if let Some(witness) = first {
            return Ok(Some(DependentColumns {
                weight: w,
                witness,
                preferred: false,
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_gray_is_a_cycle_of_unit_steps() {
        for (p, m) in [(2, 1), (2, 3), (3, 2), (5, 1), (2, 4)] {
            let g = ElementGray::new(p, m);
            let q = p.pow(m) as usize;
            let mut seen = g.elements.clone();
            seen.sort_unstable();
            assert_eq!(seen, (0..q as u32).collect::<Vec<_>>());
            assert_eq!(g.elements[0], 0);
            let field = Field::new(p as u64, m).unwrap();
            for v in 0..q {
                let diff = field.sub(Fe(g.elements[(v + 1) % q]), Fe(g.elements[v]));
                assert_eq!(diff.0, p.pow(g.step_digit[v] as u32), "p={p} m={m} v={v}");
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(49, 4), 211_876);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn thread_count_does_not_change_result() {
        let f = Field::new(3, 1).unwrap();
        let gen = Matrix::from_ints(
            &f,
            6,
            &[
                vec![1, 0, 0, 1, 2, 1],
                vec![0, 1, 0, 2, 2, 0],
                vec![0, 0, 1, 1, 1, 2],
            ],
        )
        .unwrap();
        let rows: Vec<&[Fe]> = gen.rows().collect();
        let a = min_weight_outside(
            &f,
            6,
            &[],
            &rows,
            &SearchConfig {
                threads: 1,
                ..Default::default()
            },
        )
        .unwrap();
        let b = min_weight_outside(
            &f,
            6,
            &[],
            &rows,
            &SearchConfig {
                threads: 4,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(a, b);
    }
}
