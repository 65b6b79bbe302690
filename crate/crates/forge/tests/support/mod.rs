//! Reference computations that share no numerical code with the library.

#![allow(dead_code)]

use dcg_core::C64;
use nalgebra::DMatrix;

pub type M = DMatrix<C64>;

fn inf_norm(a: &M) -> f64 {
    (0..a.nrows())
        .map(|i| a.row(i).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// `exp(a)` by scaling and squaring with a diagonal Pade(8, 8) approximant.
pub fn pade_expm(a: &M) -> M {
    const Q: usize = 8;
    let n = a.nrows();
    let norm = inf_norm(a);
    let s = if norm > 0.25 {
        (norm / 0.25).log2().ceil() as i32
    } else {
        0
    };
    let x = a / C64::new(2f64.powi(s), 0.0);
    let mut c = 1.0;
    let mut num = M::identity(n, n);
    let mut den = M::identity(n, n);
    let mut power = M::identity(n, n);
    for k in 1..=Q {
        c *= (Q + 1 - k) as f64 / (k * (2 * Q + 1 - k)) as f64;
        power = &power * &x;
        let term = &power * C64::new(c, 0.0);
        num += &term;
        den += if k % 2 == 0 { term } else { -term };
    }
    let mut e = den
        .lu()
        .solve(&num)
        .expect("Pade denominator is invertible for small norms");
    for _ in 0..s {
        e = &e * &e;
    }
    e
}

/// `exp(-i h t)` through [`pade_expm`].
pub fn pade_unitary(h: &M, t: f64) -> M {
    pade_expm(&(h * C64::new(0.0, -t)))
}

/// Integrates `dU/dt = -i H(t) U` from `U(t0) = u0` with the adaptive
/// Dormand-Prince 5(4) pair.
pub fn rk45(h: impl Fn(f64) -> M, u0: &M, t0: f64, t1: f64, rtol: f64, atol: f64) -> M {
    const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
    const A: [[f64; 6]; 7] = [
        [0.0; 6],
        [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
        [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
        [
            19372.0 / 6561.0,
            -25360.0 / 2187.0,
            64448.0 / 6561.0,
            -212.0 / 729.0,
            0.0,
            0.0,
        ],
        [
            9017.0 / 3168.0,
            -355.0 / 33.0,
            46732.0 / 5247.0,
            49.0 / 176.0,
            -5103.0 / 18656.0,
            0.0,
        ],
        [
            35.0 / 384.0,
            0.0,
            500.0 / 1113.0,
            125.0 / 192.0,
            -2187.0 / 6784.0,
            11.0 / 84.0,
        ],
    ];
    const B5: [f64; 7] = [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
        0.0,
    ];
    const B4: [f64; 7] = [
        5179.0 / 57600.0,
        0.0,
        7571.0 / 16695.0,
        393.0 / 640.0,
        -92097.0 / 339200.0,
        187.0 / 2100.0,
        1.0 / 40.0,
    ];
    let rhs = |t: f64, u: &M| -> M { (&h(t) * u) * C64::new(0.0, -1.0) };
    let mut u = u0.clone();
    let mut t = t0;
    let mut dt = (t1 - t0) / 64.0;
    while t < t1 {
        dt = dt.min(t1 - t);
        let mut k: Vec<M> = Vec::with_capacity(7);
        for stage in 0..7 {
            let mut y = u.clone();
            for (j, kj) in k.iter().enumerate() {
                if A[stage][j] != 0.0 {
                    y += kj * C64::new(dt * A[stage][j], 0.0);
                }
            }
            k.push(rhs(t + C[stage] * dt, &y));
        }
        let mut y5 = u.clone();
        let mut y4 = u.clone();
        for s in 0..7 {
            y5 += &k[s] * C64::new(dt * B5[s], 0.0);
            y4 += &k[s] * C64::new(dt * B4[s], 0.0);
        }
        let err = (&y5 - &y4)
            .iter()
            .zip(y5.iter())
            .map(|(e, y)| e.norm() / (atol + rtol * y.norm()))
            .fold(0.0, f64::max);
        if err <= 1.0 {
            t += dt;
            u = y5;
        }
        let factor = if err == 0.0 {
            5.0
        } else {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        };
        dt *= factor;
    }
    u
}

/// `(1/2^n) Tr_S[(P ⊗ I) a]` computed entry by entry.
pub fn bath_component(a: &M, p: &M, n_system: usize) -> M {
    let ds = 1 << n_system;
    let db = a.nrows() / ds;
    M::from_fn(db, db, |b1, b2| {
        let mut acc = C64::new(0.0, 0.0);
        for s1 in 0..ds {
            for s2 in 0..ds {
                acc += p[(s1, s2)] * a[(s2 * db + b1, s1 * db + b2)];
            }
        }
        acc / C64::new(ds as f64, 0.0)
    })
}

/// Simpson-rule toggling-frame integral `int_0^T U0(t)^dag h_e U0(t) dt` for a
/// constant control Hamiltonian `h_c` on the joint space.
pub fn simpson_first_order(h_c: &M, h_e: &M, duration: f64, intervals: usize) -> M {
    let n = intervals + intervals % 2;
    let dt = duration / n as f64;
    let mut acc = M::zeros(h_e.nrows(), h_e.ncols());
    for i in 0..=n {
        let w = if i == 0 || i == n {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let u = pade_unitary(h_c, i as f64 * dt);
        acc += (u.adjoint() * h_e * &u) * C64::new(w * dt / 3.0, 0.0);
    }
    acc
}

pub fn max_abs(a: &M) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn kron(a: &M, b: &M) -> M {
    a.kronecker(b)
}

pub fn pauli(c: char) -> M {
    let (o, i) = (C64::new(0.0, 0.0), C64::new(1.0, 0.0));
    let j = C64::new(0.0, 1.0);
    match c {
        'I' => M::from_row_slice(2, 2, &[i, o, o, i]),
        'X' => M::from_row_slice(2, 2, &[o, i, i, o]),
        'Y' => M::from_row_slice(2, 2, &[o, -j, j, o]),
        'Z' => M::from_row_slice(2, 2, &[i, o, o, -i]),
        _ => panic!("unknown Pauli {c}"),
    }
}

/// Tensor product of single-qubit Paulis, leftmost character first.
pub fn pauli_string(s: &str) -> M {
    s.chars()
        .map(pauli)
        .reduce(|a, b| a.kronecker(&b))
        .expect("non-empty string")
}
