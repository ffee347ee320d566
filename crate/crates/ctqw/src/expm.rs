//! Dense complex matrix exponential by scaling-and-squaring with a
//! degree-13 diagonal Pade approximant (Higham's method and constants).

use ndarray::Array2;
use num_complex::Complex64;

const PADE13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];

/// Pade-13 is accurate to unit roundoff up to this 1-norm.
const THETA13: f64 = 5.371_920_351_148_152;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn eye(n: usize) -> Array2<Complex64> {
    Array2::from_diag_elem(n, c(1.0))
}

fn one_norm(a: &Array2<Complex64>) -> f64 {
    let (rows, cols) = a.dim();
    (0..cols)
        .map(|j| (0..rows).map(|i| a[(i, j)].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Solve A X = B by Gaussian elimination with partial pivoting.
fn solve(mut a: Array2<Complex64>, mut b: Array2<Complex64>) -> Array2<Complex64> {
    let n = a.nrows();
    let m = b.ncols();
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&i, &j| a[(i, col)].norm().total_cmp(&a[(j, col)].norm()))
            .expect("non-empty column");
        if pivot_row != col {
            for j in 0..n {
                a.swap((col, j), (pivot_row, j));
            }
            for j in 0..m {
                b.swap((col, j), (pivot_row, j));
            }
        }
        let pivot = a[(col, col)];
        for row in col + 1..n {
            let factor = a[(row, col)] / pivot;
            if factor == c(0.0) {
                continue;
            }
            for j in col..n {
                let v = a[(col, j)];
                a[(row, j)] -= factor * v;
            }
            for j in 0..m {
                let v = b[(col, j)];
                b[(row, j)] -= factor * v;
            }
        }
    }
    let mut x = Array2::zeros((n, m));
    for col in (0..n).rev() {
        for j in 0..m {
            let mut sum = b[(col, j)];
            for k in col + 1..n {
                sum -= a[(col, k)] * x[(k, j)];
            }
            x[(col, j)] = sum / a[(col, col)];
        }
    }
    x
}

fn pade13(a: &Array2<Complex64>) -> Array2<Complex64> {
    let n = a.nrows();
    let id = eye(n);
    let a2 = a.dot(a);
    let a4 = a2.dot(&a2);
    let a6 = a2.dot(&a4);

    let w1 = &a6 * c(PADE13[13]) + &a4 * c(PADE13[11]) + &a2 * c(PADE13[9]);
    let w2 = w1.dot(&a6)
        + &a6 * c(PADE13[7])
        + &a4 * c(PADE13[5])
        + &a2 * c(PADE13[3])
        + &id * c(PADE13[1]);
    let u = a.dot(&w2);

    let z1 = &a6 * c(PADE13[12]) + &a4 * c(PADE13[10]) + &a2 * c(PADE13[8]);
    let v = z1.dot(&a6)
        + &a6 * c(PADE13[6])
        + &a4 * c(PADE13[4])
        + &a2 * c(PADE13[2])
        + &id * c(PADE13[0]);

    solve(&v - &u, &v + &u)
}

/// exp(A) for a square complex matrix.
pub fn expm(a: &Array2<Complex64>) -> Array2<Complex64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "expm needs a square matrix");
    if n == 0 {
        return Array2::zeros((0, 0));
    }

    let norm = one_norm(a);
    let squarings = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as u32
    } else {
        0
    };
    let scaled = a / c(f64::powi(2.0, squarings as i32));
    let mut result = pade13(&scaled);
    for _ in 0..squarings {
        result = result.dot(&result);
    }
    result
}
