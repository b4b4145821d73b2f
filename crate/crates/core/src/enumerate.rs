//! Codeword enumeration over packed words.
//!
//! A codeword over GF(2^f) is packed `f` bits per coordinate so that vector
//! addition is a single XOR. Messages are visited in lexicographic order over
//! the canonical element order (first message symbol most significant); the
//! first few message symbols select a chunk, chunks are the unit of parallel
//! work and each chunk walks the remaining symbols depth first.

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElement};
use crate::par::Exec;

/// Default cap on the number of codewords an enumeration may visit.
pub const DEFAULT_CODEWORD_BUDGET: u64 = 1 << 32;

pub(crate) trait Word: Copy + Send + Sync + 'static {
    const LIMB_BITS: u32;
    const LIMBS: usize;
    fn zero() -> Self;
    fn xor(self, other: Self) -> Self;
    fn limb(&self, i: usize) -> Limb;
    fn limb_mut(&mut self, i: usize) -> &mut Limb;
}

/// Storage for one limb of a packed word.
pub(crate) type Limb = u128;

impl Word for u128 {
    const LIMB_BITS: u32 = 128;
    const LIMBS: usize = 1;
    fn zero() -> Self {
        0
    }
    fn xor(self, other: Self) -> Self {
        self ^ other
    }
    fn limb(&self, _: usize) -> Limb {
        *self
    }
    fn limb_mut(&mut self, _: usize) -> &mut Limb {
        self
    }
}

#[derive(Clone, Copy)]
pub(crate) struct Wide([u128; 4]);

impl Word for Wide {
    const LIMB_BITS: u32 = 128;
    const LIMBS: usize = 4;
    fn zero() -> Self {
        Wide([0; 4])
    }
    fn xor(self, other: Self) -> Self {
        let mut out = self;
        for (a, b) in out.0.iter_mut().zip(other.0) {
            *a ^= b;
        }
        out
    }
    fn limb(&self, i: usize) -> Limb {
        self.0[i]
    }
    fn limb_mut(&mut self, i: usize) -> &mut Limb {
        &mut self.0[i]
    }
}

/// Position of coordinates inside a packed word. Symbols never straddle a
/// limb boundary.
#[derive(Clone, Debug)]
pub(crate) struct Layout {
    pub f: u32,
    pub n: usize,
    per_limb: usize,
}

impl Layout {
    fn new<W: Word>(f: u32, n: usize) -> Option<Self> {
        let per_limb = (W::LIMB_BITS / f) as usize;
        (n <= per_limb * W::LIMBS).then_some(Layout { f, n, per_limb })
    }

    #[inline]
    fn slot(&self, i: usize) -> (usize, u32) {
        (i / self.per_limb, (i % self.per_limb) as u32 * self.f)
    }

    #[inline]
    pub fn get<W: Word>(&self, w: &W, i: usize) -> u64 {
        let (l, s) = self.slot(i);
        ((w.limb(l) >> s) & ((1u128 << self.f) - 1)) as u64
    }

    fn set<W: Word>(&self, w: &mut W, i: usize, v: u64) {
        let (l, s) = self.slot(i);
        *w.limb_mut(l) |= (v as u128) << s;
    }

    fn pack<W: Word>(&self, v: &[FieldElement]) -> W {
        let mut w = W::zero();
        for (i, x) in v.iter().enumerate() {
            self.set(&mut w, i, x.value());
        }
        w
    }

    pub fn unpack<W: Word>(&self, w: &W) -> Vec<FieldElement> {
        (0..self.n).map(|i| FieldElement(self.get(w, i))).collect()
    }

    /// Bit mask with the lowest bit of every used symbol slot set.
    fn low_mask<W: Word>(&self) -> W {
        let mut w = W::zero();
        for i in 0..self.n {
            self.set(&mut w, i, 1);
        }
        w
    }
}

/// Precomputed multiples `a * g_i` of the generator rows, packed.
pub(crate) struct Enumerator<W: Word> {
    pub layout: Layout,
    q: usize,
    k: usize,
    scaled: Vec<Vec<W>>,
    low: W,
}

impl<W: Word> Enumerator<W> {
    pub fn new(ctx: &FieldCtx, n: usize, rows: &[Vec<FieldElement>]) -> Option<Self> {
        let layout = Layout::new::<W>(ctx.degree(), n)?;
        let scaled = rows
            .iter()
            .map(|row| {
                ctx.elements()
                    .map(|a| {
                        let v: Vec<FieldElement> = row.iter().map(|&x| ctx.mul(a, x)).collect();
                        layout.pack(&v)
                    })
                    .collect()
            })
            .collect();
        let low = layout.low_mask();
        Some(Enumerator { layout, q: ctx.order() as usize, k: rows.len(), scaled, low })
    }

    /// Number of nonzero coordinates.
    #[inline]
    pub fn weight(&self, w: &W) -> u32 {
        let f = self.layout.f;
        (0..W::LIMBS)
            .map(|l| {
                let x = w.limb(l);
                let mut y = x;
                for s in 1..f {
                    y |= x >> s;
                }
                (y & self.low.limb(l)).count_ones()
            })
            .sum()
    }

    fn prefix_len(&self) -> usize {
        let mut t = 0;
        let mut chunks = 1usize;
        while t < self.k && chunks < 256 {
            chunks *= self.q;
            t += 1;
        }
        t
    }

    /// Visits every codeword as `(message rank, word)`; see [`Exec::fold_chunks`]
    /// for the requirements on `merge`.
    pub fn fold<A, I, S, M>(&self, exec: Exec, init: I, step: S, merge: M) -> A
    where
        A: Send,
        I: Fn() -> A + Sync + Send,
        S: Fn(&mut A, u64, &W) + Sync + Send,
        M: Fn(A, A) -> A + Sync + Send,
    {
        let t = self.prefix_len();
        let chunks = self.q.pow(t as u32);
        let tail = self.q.pow((self.k - t) as u32) as u64;
        exec.fold_chunks(
            chunks,
            init,
            |acc, c| {
                let mut base = W::zero();
                let mut rest = c;
                for i in (0..t).rev() {
                    base = base.xor(self.scaled[i][rest % self.q]);
                    rest /= self.q;
                }
                self.walk(t, base, c as u64 * tail, acc, &step);
            },
            merge,
        )
    }

    fn walk<A, S>(&self, depth: usize, word: W, rank: u64, acc: &mut A, step: &S)
    where
        S: Fn(&mut A, u64, &W),
    {
        if depth == self.k {
            step(acc, rank, &word);
            return;
        }
        let below = self.q.pow((self.k - depth - 1) as u32) as u64;
        for (a, m) in self.scaled[depth].iter().enumerate() {
            self.walk(depth + 1, word.xor(*m), rank + a as u64 * below, acc, step);
        }
    }
}

/// Number of codewords `q^k`, checked against `budget`.
pub(crate) fn check_budget(ctx: &FieldCtx, k: usize, budget: u64) -> Result<u64> {
    let total = (ctx.order() as u128).checked_pow(k as u32).filter(|&t| t <= budget as u128);
    total.map(|t| t as u64).ok_or_else(|| {
        Error::Budget(format!(
            "{}^{k} codewords exceed the enumeration budget of {budget}",
            ctx.order()
        ))
    })
}

/// Runs `body` with an enumerator of the narrowest word type that fits.
macro_rules! with_enumerator {
    ($ctx:expr, $n:expr, $rows:expr, |$e:ident| $body:expr) => {{
        if let Some($e) = $crate::enumerate::Enumerator::<u128>::new($ctx, $n, $rows) {
            $body
        } else if let Some($e) = $crate::enumerate::Enumerator::<$crate::enumerate::Wide>::new($ctx, $n, $rows) {
            $body
        } else {
            Err($crate::error::Error::Budget(format!(
                "length {} over {} is too wide for packed enumeration",
                $n, $ctx
            )))
        }
    }};
}
pub(crate) use with_enumerator;
