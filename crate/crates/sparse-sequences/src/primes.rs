/// All primes `p < n`.
pub fn primes_below(n: u64) -> Vec<u64> {
    if n <= 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n];
    let mut out = Vec::new();
    for i in 2..n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j < n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// `Omega(n)` for `0 <= n <= n_max`, with `Omega(0) = Omega(1) = 0`.
pub fn omega_table(n_max: u64) -> Vec<u8> {
    let n = n_max as usize;
    let mut omega = vec![0u8; n + 1];
    for p in primes_below(n_max + 1) {
        let p = p as usize;
        let mut pk = p;
        loop {
            let mut m = pk;
            while m <= n {
                omega[m] += 1;
                m += pk;
            }
            match pk.checked_mul(p) {
                Some(v) if v <= n => pk = v,
                _ => break,
            }
        }
    }
    omega
}

/// `{n <= n_max : Omega(n) <= l}`.
pub fn almost_primes(l: u32, n_max: u64) -> Vec<u64> {
    let omega = omega_table(n_max);
    (1..=n_max).filter(|&n| omega[n as usize] as u32 <= l).collect()
}

const SEGMENT: u64 = 1 << 16;

/// Visits `n <= n_max` coprime to every prime below `z`, in increasing order.
fn for_each_rough(z: f64, n_max: u64, mut visit: impl FnMut(u64)) {
    let zc = if z.is_finite() { z.ceil().max(0.0) as u64 } else { n_max + 1 };
    let primes = primes_below(zc.min(n_max + 1));
    let mut mark = vec![false; SEGMENT as usize];
    let mut lo = 1u64;
    while lo <= n_max {
        let hi = (lo + SEGMENT - 1).min(n_max);
        mark.iter_mut().for_each(|m| *m = false);
        for &p in &primes {
            let first = lo.div_ceil(p) * p;
            let mut m = first;
            while m <= hi {
                mark[(m - lo) as usize] = true;
                m += p;
            }
        }
        for n in lo..=hi {
            if !mark[(n - lo) as usize] {
                visit(n);
            }
        }
        lo = hi + 1;
    }
}

/// `{n <= n_max : gcd(n, P(z)) = 1}` where `P(z)` is the product of primes `p < z`.
pub fn rough_numbers(z: f64, n_max: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for_each_rough(z, n_max, |n| out.push(n));
    out
}

pub fn rough_count(z: f64, n_max: u64) -> u64 {
    let mut c = 0;
    for_each_rough(z, n_max, |_| c += 1);
    c
}
