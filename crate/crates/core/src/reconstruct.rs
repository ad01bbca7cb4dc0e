//! Linear Lagrange reconstruction on nonuniform stencils.
//!
//! All routines work in normalized coordinates `c`; the affine map
//! `x = z + c h` leaves the reconstructed values unchanged, so `h` never
//! enters the arithmetic. Each evaluator is split in two phases: building
//! the coefficient vector for a fixed `(c, c_star)` is quadratic or cubic in
//! the stencil size, applying it to data is a dot product.

use crate::error::{Error, Result};
use crate::grid::check_increasing;
use crate::scalar::Real;

/// Scaling of the global smoothness measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DScaling {
    /// `(R-1)!` times the leading coefficient (the algorithmic form).
    #[default]
    Factorial,
    /// The bare leading coefficient, i.e. the divided difference.
    Plain,
}

/// Coefficients of a linear functional on sample data.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearWeights<S>(pub Vec<S>);

impl<S: Real> LinearWeights<S> {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, data: &[S]) -> Result<S> {
        if data.len() != self.0.len() {
            return Err(Error::Shape { expected: self.0.len(), got: data.len() });
        }
        Ok(dot(&self.0, data))
    }

    pub fn as_slice(&self) -> &[S] {
        &self.0
    }
}

#[inline]
pub(crate) fn dot<S: Real>(a: &[S], b: &[S]) -> S {
    let mut acc = S::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x.clone() * y;
    }
    acc
}

fn factorial<S: Real>(n: usize) -> S {
    (2..=n).fold(S::one(), |acc, k| acc * S::from_usize(k))
}

/// Lagrange basis `prod_{l != j} (c_star - c_l) / (c_j - c_l)` for every node.
pub fn point_weights<S: Real>(c: &[S], c_star: &S) -> Result<LinearWeights<S>> {
    if c.is_empty() {
        return Err(Error::InvalidArgument("empty stencil".into()));
    }
    check_increasing(c)?;
    let w = (0..c.len())
        .map(|j| {
            let mut num = S::one();
            let mut den = S::one();
            for (l, cl) in c.iter().enumerate() {
                if l != j {
                    num *= c_star.clone() - cl;
                    den *= c[j].clone() - cl;
                }
            }
            num / den
        })
        .collect();
    Ok(LinearWeights(w))
}

/// Value at `c_star` of the polynomial of degree `< c.len()` through `(c_i, f_i)`.
pub fn lagrange_point_eval<S: Real>(c: &[S], f: &[S], c_star: &S) -> Result<S> {
    point_weights(c, c_star)?.apply(f)
}

/// Derivative at `x` of the Lagrange basis polynomial of node `j`.
fn basis_derivative<S: Real>(c: &[S], j: usize, x: &S) -> S {
    let mut total = S::zero();
    for k in 0..c.len() {
        if k == j {
            continue;
        }
        let mut term = S::one() / (c[j].clone() - &c[k]);
        for l in 0..c.len() {
            if l != j && l != k {
                term = term * (x.clone() - &c[l]) / (c[j].clone() - &c[l]);
            }
        }
        total += term;
    }
    total
}

/// Coefficients mapping `R` cell averages on the interfaces `c[0..=R]` to the
/// value at `c_star` of the unique degree `R-1` polynomial with those averages.
///
/// The polynomial is the derivative of the interpolant of the primitive
/// through the interfaces; expanding that gives weight
/// `(c_{i+1} - c_i) * sum_{j > i} L_j'(c_star)` for average `i`.
pub fn cell_weights<S: Real>(c: &[S], c_star: &S) -> Result<LinearWeights<S>> {
    if c.len() < 2 {
        return Err(Error::InvalidArgument("a cell stencil needs at least two interfaces".into()));
    }
    check_increasing(c)?;
    let cells = c.len() - 1;
    let derivs: Vec<S> = (0..=cells).map(|j| basis_derivative(c, j, c_star)).collect();
    let mut w = vec![S::zero(); cells];
    let mut tail = S::zero();
    for i in (0..cells).rev() {
        tail += &derivs[i + 1];
        w[i] = (c[i + 1].clone() - &c[i]) * &tail;
    }
    Ok(LinearWeights(w))
}

/// Value at `c_star` of the degree `R-1` polynomial matching `R` cell averages.
pub fn lagrange_cell_eval<S: Real>(c: &[S], fbar: &[S], c_star: &S) -> Result<S> {
    if fbar.len() + 1 != c.len() {
        return Err(Error::Shape { expected: c.len().saturating_sub(1), got: fbar.len() });
    }
    cell_weights(c, c_star)?.apply(fbar)
}

/// Newton difference quotient `f[c_0, ..., c_{R-1}]` by the recursive
/// definition with denominators `c_{i+j} - c_i`.
pub fn undivided_difference<S: Real>(c: &[S], f: &[S]) -> Result<S> {
    if c.is_empty() {
        return Err(Error::InvalidArgument("undivided difference of an empty stencil".into()));
    }
    if f.len() != c.len() {
        return Err(Error::Shape { expected: c.len(), got: f.len() });
    }
    check_increasing(c)?;
    let mut table = f.to_vec();
    for j in 1..c.len() {
        for i in 0..c.len() - j {
            table[i] = (table[i + 1].clone() - &table[i]) / (c[i + j].clone() - &c[i]);
        }
    }
    Ok(table.swap_remove(0))
}

/// `1 / prod_{j != i} (c_i - c_j)`: the closed-form weights of the top
/// divided difference.
fn divided_difference_weights<S: Real>(c: &[S]) -> Vec<S> {
    (0..c.len())
        .map(|i| {
            let mut den = S::one();
            for (j, cj) in c.iter().enumerate() {
                if j != i {
                    den *= c[i].clone() - cj;
                }
            }
            S::one() / den
        })
        .collect()
}

/// Weights producing the (scaled) leading coefficient of the point-value
/// interpolant: `(R-1)! * sum_i f_i / prod_{j != i} (c_i - c_j)`.
pub fn point_leading_weights<S: Real>(c: &[S], scaling: DScaling) -> Result<LinearWeights<S>> {
    if c.is_empty() {
        return Err(Error::InvalidArgument("empty stencil".into()));
    }
    check_increasing(c)?;
    let scale = match scaling {
        DScaling::Factorial => factorial::<S>(c.len() - 1),
        DScaling::Plain => S::one(),
    };
    Ok(LinearWeights(divided_difference_weights(c).into_iter().map(|w| w * &scale).collect()))
}

/// Weights producing the (scaled) leading coefficient of the cell-average
/// reconstruction on interfaces `c[0..=R]`.
///
/// The basis polynomial of interface `j` has derivative with leading
/// coefficient `R / prod_{k != j} (c_j - c_k)`, so average `i` contributes
/// `(c_{i+1} - c_i) * sum_{j > i} R / prod_{k != j} (c_j - c_k)`.
pub fn cell_leading_weights<S: Real>(c: &[S], scaling: DScaling) -> Result<LinearWeights<S>> {
    if c.len() < 2 {
        return Err(Error::InvalidArgument("a cell stencil needs at least two interfaces".into()));
    }
    check_increasing(c)?;
    let cells = c.len() - 1;
    let scale = match scaling {
        DScaling::Factorial => factorial::<S>(cells),
        DScaling::Plain => S::from_usize(cells),
    };
    let dd = divided_difference_weights(c);
    let mut w = vec![S::zero(); cells];
    let mut tail = S::zero();
    for i in (0..cells).rev() {
        tail += &dd[i + 1];
        w[i] = (c[i + 1].clone() - &c[i]) * &tail * &scale;
    }
    Ok(LinearWeights(w))
}

/// `(R-1)!` times the leading coefficient of the cell-average reconstruction.
pub fn cell_leading_term<S: Real>(c: &[S], fbar: &[S]) -> Result<S> {
    if fbar.len() + 1 != c.len() {
        return Err(Error::Shape { expected: c.len().saturating_sub(1), got: fbar.len() });
    }
    cell_leading_weights(c, DScaling::Factorial)?.apply(fbar)
}
