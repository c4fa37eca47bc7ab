//! (n,m)-functions as truth tables, with algebraic normal form, degree,
//! component functions and derivatives.
//!
//! Input points and output values use the same integer encoding everywhere:
//! bit `i` of the integer is coordinate `i`. For a field-valued function the
//! encoding coincides with [`FieldElement`](crate::gf2n::FieldElement).

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::gf2n::{FieldContext, FieldElement};

/// Largest supported input dimension.
pub const MAX_INPUT_DIM: u32 = 16;
/// Largest supported output dimension.
pub const MAX_OUTPUT_DIM: u32 = 32;

/// In-place binary Möbius transform on a table of `2^n` words.
///
/// Each bit position of the words is transformed independently, so this
/// handles all coordinates of a vectorial function at once. The transform
/// is an involution.
pub fn mobius_transform(values: &mut [u32]) {
    debug_assert!(values.len().is_power_of_two());
    let mut half = 1;
    while half < values.len() {
        for block in values.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (h, l) in hi.iter_mut().zip(lo.iter()) {
                *h ^= *l;
            }
        }
        half *= 2;
    }
}

/// ANF coefficients of all coordinates, packed: bit `j` of `coeffs[u]` is
/// the coefficient of the monomial `prod_{i in u} x_i` in coordinate `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnfCoefficients {
    n: u32,
    m: u32,
    coeffs: Vec<u32>,
}

impl AnfCoefficients {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn packed(&self) -> &[u32] {
        &self.coeffs
    }

    /// Coefficient vector of coordinate `j`, indexed by monomial.
    pub fn coordinate(&self, j: u32) -> Vec<bool> {
        assert!(j < self.m);
        self.coeffs.iter().map(|&c| c >> j & 1 == 1).collect()
    }

    /// Monomials (as support masks) with a nonzero coefficient in some coordinate.
    pub fn monomials(&self) -> impl Iterator<Item = u32> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(u, _)| u as u32)
    }

    /// Recovers the truth table.
    pub fn to_table(&self) -> Vec<u32> {
        let mut t = self.coeffs.clone();
        mobius_transform(&mut t);
        t
    }

    /// Degree of the component `v . F`, `None` if that component is zero.
    pub fn component_degree(&self, v: u32) -> Option<u32> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| (c & v).count_ones() & 1 == 1)
            .map(|(u, _)| u.count_ones())
            .max()
    }

    /// Maximum monomial weight over all coordinates, `None` for the zero function.
    pub fn degree(&self) -> Option<u32> {
        self.monomials().map(u32::count_ones).max()
    }
}

/// An (n,m)-function stored as its truth table.
pub struct VectorialFunction {
    n: u32,
    m: u32,
    table: Vec<u32>,
    anf: OnceLock<AnfCoefficients>,
}

impl Clone for VectorialFunction {
    fn clone(&self) -> Self {
        Self { n: self.n, m: self.m, table: self.table.clone(), anf: self.anf.clone() }
    }
}

impl PartialEq for VectorialFunction {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.m == other.m && self.table == other.table
    }
}

impl Eq for VectorialFunction {}

impl fmt::Debug for VectorialFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VectorialFunction(n={}, m={}, ", self.n, self.m)?;
        if self.table.len() <= 32 {
            write!(f, "{:x?})", self.table)
        } else {
            write!(f, "[{} entries])", self.table.len())
        }
    }
}

fn value_mask(m: u32) -> u32 {
    if m >= 32 {
        u32::MAX
    } else {
        (1u32 << m) - 1
    }
}

impl VectorialFunction {
    pub fn new(n: u32, m: u32, table: Vec<u32>) -> Result<Self> {
        if n > MAX_INPUT_DIM {
            return Err(Error::InvalidArgument(format!("input dimension {n} > {MAX_INPUT_DIM}")));
        }
        if m > MAX_OUTPUT_DIM {
            return Err(Error::InvalidArgument(format!("output dimension {m} > {MAX_OUTPUT_DIM}")));
        }
        if table.len() != 1usize << n {
            return Err(Error::DimensionMismatch(format!(
                "table has {} entries, expected 2^{n}",
                table.len()
            )));
        }
        let mask = value_mask(m);
        if let Some(&bad) = table.iter().find(|&&v| v & !mask != 0) {
            return Err(Error::ValueOutOfRange { value: bad, bits: m });
        }
        Ok(Self { n, m, table, anf: OnceLock::new() })
    }

    pub fn from_fn(n: u32, m: u32, f: impl FnMut(u32) -> u32) -> Result<Self> {
        if n > MAX_INPUT_DIM {
            return Err(Error::InvalidArgument(format!("input dimension {n} > {MAX_INPUT_DIM}")));
        }
        Self::new(n, m, (0..1u32 << n).map(f).collect())
    }

    pub fn constant(n: u32, m: u32, c: u32) -> Result<Self> {
        Self::from_fn(n, m, |_| c)
    }

    /// The (n,n)-function `sum c_i x^{e_i}` over the field.
    pub fn from_univariate(ctx: &FieldContext, terms: &[(FieldElement, u64)]) -> Result<Self> {
        let n = ctx.n();
        let max = (1u64 << n) - 1;
        for &(c, e) in terms {
            ctx.check(c)?;
            if e > max {
                return Err(Error::ExponentOutOfRange { n, exponent: e, max });
            }
        }
        Self::from_fn(n, n, |x| {
            terms.iter().fold(0, |acc, &(c, e)| acc ^ ctx.mul(c, ctx.pow(x, e)))
        })
    }

    /// The power map `x^d`.
    pub fn power_map(ctx: &FieldContext, d: u64) -> Result<Self> {
        Self::from_univariate(ctx, &[(1, d)])
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn into_table(self) -> Vec<u32> {
        self.table
    }

    #[inline]
    pub fn eval(&self, x: u32) -> u32 {
        self.table[x as usize]
    }

    /// Algebraic normal form, computed once and cached.
    pub fn anf(&self) -> &AnfCoefficients {
        self.anf.get_or_init(|| {
            let mut coeffs = self.table.clone();
            mobius_transform(&mut coeffs);
            AnfCoefficients { n: self.n, m: self.m, coeffs }
        })
    }

    /// Algebraic degree; `None` for the zero function.
    pub fn algebraic_degree(&self) -> Option<u32> {
        self.anf().degree()
    }

    /// The Boolean component `x -> v . F(x)` with the bitwise dot product.
    pub fn component(&self, v: u32) -> Result<Self> {
        self.check_component_vector(v)?;
        Self::new(
            self.n,
            1,
            self.table.iter().map(|&y| (y & v).count_ones() & 1).collect(),
        )
    }

    /// The Boolean component `x -> tr(v F(x))` of an (n,n)-function over `ctx`.
    pub fn component_trace(&self, ctx: &FieldContext, v: FieldElement) -> Result<Self> {
        if self.m != ctx.n() || self.n != ctx.n() {
            return Err(Error::DimensionMismatch(format!(
                "trace components need an ({0},{0})-function, got ({1},{2})",
                ctx.n(),
                self.n,
                self.m
            )));
        }
        self.check_component_vector(v)?;
        Self::new(self.n, 1, self.table.iter().map(|&y| ctx.trace(ctx.mul(v, y))).collect())
    }

    fn check_component_vector(&self, v: u32) -> Result<()> {
        if v == 0 {
            return Err(Error::InvalidArgument("component vector must be nonzero".into()));
        }
        if v & !value_mask(self.m) != 0 {
            return Err(Error::ValueOutOfRange { value: v, bits: self.m });
        }
        Ok(())
    }

    /// `D_a F(x) = F(x + a) + F(x)`.
    pub fn derivative(&self, a: u32) -> Self {
        assert!(a >> self.n == 0, "direction {a:#x} outside F_2^{}", self.n);
        let table = (0..self.table.len())
            .map(|x| self.table[x ^ a as usize] ^ self.table[x])
            .collect();
        Self { n: self.n, m: self.m, table, anf: OnceLock::new() }
    }

    /// Iterated derivative `D_{a_1} ... D_{a_l} F`.
    pub fn higher_derivative(&self, dirs: &[u32]) -> Self {
        dirs.iter().fold(self.clone(), |g, &a| g.derivative(a))
    }

    /// The first nonzero `v` (in increasing order) whose component has
    /// degree below `k`, together with that degree.
    pub fn low_degree_component(&self, k: u32) -> Option<(u32, Option<u32>)> {
        let anf = self.anf();
        (1..=value_mask(self.m)).find_map(|v| {
            let d = anf.component_degree(v);
            match d {
                Some(d) if d >= k => None,
                _ => Some((v, d)),
            }
        })
    }

    /// True iff every nonzero component has algebraic degree at least `k`.
    pub fn is_nondegenerate(&self, k: u32) -> bool {
        self.low_degree_component(k).is_none()
    }
}
