//! Small dense-vector helpers over coordinate slices.

use crate::Scalar;

#[inline]
pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

#[inline]
pub fn norm<T: Scalar>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

/// `alpha * a + beta * b`
#[inline]
pub fn lin2<T: Scalar>(alpha: T, a: &[T], beta: T, b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(&x, &y)| alpha * x + beta * y).collect()
}

#[inline]
pub fn sub<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(&x, &y)| x - y).collect()
}

#[inline]
pub fn add<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(&x, &y)| x + y).collect()
}

#[inline]
pub fn scale<T: Scalar>(alpha: T, a: &[T]) -> Vec<T> {
    a.iter().map(|&x| alpha * x).collect()
}

/// `a += alpha * b`
#[inline]
pub fn axpy<T: Scalar>(a: &mut [T], alpha: T, b: &[T]) {
    for (x, &y) in a.iter_mut().zip(b) {
        *x = *x + alpha * y;
    }
}

pub fn cross3<T: Scalar>(a: &[T], b: &[T]) -> [T; 3] {
    debug_assert!(a.len() == 3 && b.len() == 3);
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Removes the component of `v` along the unit vector `u`.
pub fn reject<T: Scalar>(v: &[T], u: &[T]) -> Vec<T> {
    let k = dot(v, u);
    v.iter().zip(u).map(|(&x, &y)| x - k * y).collect()
}

/// Solves the square system `a x = b` by Gaussian elimination with partial pivoting.
/// `a` is row-major `n x n`. Returns `None` when a pivot underflows `tiny`.
pub fn solve_dense<T: Scalar>(mut a: Vec<T>, mut b: Vec<T>, n: usize, tiny: T) -> Option<Vec<T>> {
    for col in 0..n {
        let mut piv = col;
        let mut best = a[col * n + col].abs();
        for row in col + 1..n {
            let v = a[row * n + col].abs();
            if v > best {
                best = v;
                piv = row;
            }
        }
        if best <= tiny {
            return None;
        }
        if piv != col {
            for k in 0..n {
                a.swap(col * n + k, piv * n + k);
            }
            b.swap(col, piv);
        }
        let p = a[col * n + col];
        for row in col + 1..n {
            let f = a[row * n + col] / p;
            if f == T::zero() {
                continue;
            }
            for k in col..n {
                a[row * n + k] = a[row * n + k] - f * a[col * n + k];
            }
            b[row] = b[row] - f * b[col];
        }
    }
    let mut x = vec![T::zero(); n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in row + 1..n {
            acc = acc - a[row * n + k] * x[k];
        }
        x[row] = acc / a[row * n + row];
    }
    Some(x)
}
