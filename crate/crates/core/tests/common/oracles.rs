//! Independent reference computations the library is checked against.

// The two shipped 7-level tables, written out by hand; rows and columns -L3..+L3.
pub const EXPECTED_ONE: [[i8; 7]; 7] = [
    [-3, -3, -3, -3, -3, -3, -1],
    [-3, -3, -3, -3, -2, -1, 1],
    [-3, -3, -2, -2, -1, -1, 1],
    [-3, -3, -2, -1, 0, 0, 1],
    [-3, -2, -1, 0, 0, 1, 2],
    [-3, -1, -1, 0, 1, 1, 3],
    [-1, 1, 1, 1, 2, 3, 3],
];
pub const EXPECTED_TWO: [[i8; 7]; 7] = [
    [-3, -3, -3, -3, -3, -3, 0],
    [-3, -3, -3, -2, -2, -1, 1],
    [-3, -3, -2, -2, -1, 0, 2],
    [-3, -2, -2, -1, 0, 1, 2],
    [-3, -2, -1, 0, 0, 1, 2],
    [-3, -1, 0, 1, 1, 2, 3],
    [0, 1, 2, 2, 2, 3, 3],
];

/// Sign product and minimum magnitude, computed on real values.
pub fn check_oracle(values: &[f64]) -> f64 {
    let sign: f64 = values.iter().map(|&x| if x < 0.0 { -1.0 } else { 1.0 }).product();
    let mag = values.iter().map(|x| x.abs()).fold(f64::INFINITY, f64::min);
    sign * mag
}

/// The quantizer: level k when T_k <= |x| < T_{k+1}, signed; zero below T_1.
pub fn quantize(x: f64, thresholds: &[f64]) -> i8 {
    let k = thresholds.iter().take_while(|&&t| x.abs() >= t).count() as i8;
    if x < 0.0 {
        -k
    } else {
        k
    }
}

pub fn eval_closed(levels: &[f64], thresholds: &[f64], c: f64, y: f64, m1: i8, m2: i8, nlt: bool) -> i8 {
    let value = |m: i8| {
        if m == 0 {
            0.0
        } else {
            m.signum() as f64 * levels[m.unsigned_abs() as usize - 1]
        }
    };
    let (a, b) = (value(m1), value(m2));
    let omega = if nlt {
        let sign = |x: f64| (x < 0.0) as u8;
        let delta = ((a.abs() + b.abs() - 2.0 * levels[1]).abs() < 1e-12) as u8;
        1.0 - f64::from((sign(a) ^ sign(b)) * delta)
    } else {
        1.0
    };
    quantize(a + b + omega * y * c, thresholds)
}

/// Channel LLRs for a received word.
pub fn channel(received: &[u8], alpha: f64) -> Vec<f64> {
    let l = ((1.0 - alpha) / alpha).ln();
    received.iter().map(|&r| if r == 0 { l } else { -l }).collect()
}

/// Exact bitwise posterior LLRs by summing over every codeword.
pub fn exact_posteriors(codewords: &[Vec<u8>], received: &[u8], alpha: f64) -> Vec<f64> {
    let n = received.len();
    let mut p0 = vec![0.0; n];
    let mut p1 = vec![0.0; n];
    for x in codewords {
        let flips = x.iter().zip(received).filter(|(a, b)| a != b).count() as i32;
        let w = alpha.powi(flips) * (1.0 - alpha).powi(n as i32 - flips);
        for v in 0..n {
            if x[v] == 0 {
                p0[v] += w;
            } else {
                p1[v] += w;
            }
        }
    }
    p0.iter().zip(&p1).map(|(a, b)| (a / b).ln()).collect()
}

/// Max-product LLRs: best log-likelihood with the bit at 0 minus best with it at 1.
pub fn max_product(codewords: &[Vec<u8>], llr: &[f64]) -> Vec<f64> {
    let n = llr.len();
    let mut best = vec![[f64::NEG_INFINITY; 2]; n];
    for x in codewords {
        let score: f64 = x.iter().zip(llr).map(|(&b, l)| if b == 0 { l / 2.0 } else { -l / 2.0 }).sum();
        for v in 0..n {
            let slot = &mut best[v][x[v] as usize];
            *slot = slot.max(score);
        }
    }
    best.iter().map(|b| b[0] - b[1]).collect()
}
