use std::sync::OnceLock;

use sparse_sequences::primes_below;

/// Largest `z` served by the cached prime table.
pub const MAX_TABLE_Z: u64 = 10_000_000;

struct Table {
    primes: Vec<u64>,
    /// `prefix[i] = sum_{j < i} -ln(1 - 1/p_j)`.
    prefix: Vec<f64>,
}

fn table() -> &'static Table {
    static TABLE: OnceLock<Table> = OnceLock::new();
    TABLE.get_or_init(|| {
        let primes = primes_below(MAX_TABLE_Z + 1);
        let mut prefix = Vec::with_capacity(primes.len() + 1);
        let (mut s, mut comp) = (0.0f64, 0.0f64);
        prefix.push(0.0);
        for &p in &primes {
            let t = -(-1.0 / p as f64).ln_1p();
            let y = s + t;
            comp += if s.abs() >= t.abs() { (s - y) + t } else { (t - y) + s };
            s = y;
            prefix.push(s + comp);
        }
        Table { primes, prefix }
    })
}

/// Number of primes below `x`.
fn index_below(x: f64) -> usize {
    table().primes.partition_point(|&p| (p as f64) < x)
}

fn check_range(z: f64) {
    assert!(z <= MAX_TABLE_Z as f64 + 1.0, "z = {z} beyond the prime table");
}

/// `V(z) = prod_{p < z} (1 - 1/p)`.
pub fn v_of_z(z: f64) -> f64 {
    check_range(z);
    (-table().prefix[index_below(z)]).exp()
}

/// `prod_{u <= p < z} (1 - 1/p)^{-1}` divided by `log z / log u`.
pub fn mertens_ratio(u: f64, z: f64) -> f64 {
    check_range(z);
    let t = table();
    let lhs = t.prefix[index_below(z)] - t.prefix[index_below(u)];
    (lhs - (z.ln() / u.ln()).ln()).exp()
}

/// `prod_{u <= p < z} (1 - 1/p)^{-1} < (1 + eps/3) log z / log u`.
pub fn mertens_check(u: f64, z: f64, eps: f64) -> bool {
    assert!(u >= 2.0 && u < z, "need 2 <= u < z");
    mertens_ratio(u, z) < 1.0 + eps / 3.0
}

/// Least integer `u1` in `[2, u_max]` such that the inequality holds for every integer
/// `u` in `[u1, u_max]` against every `z = u 10^j <= z_max`, `j >= 1`.
pub fn empirical_u1(eps: f64, u_max: u64, z_max: f64) -> Option<u64> {
    let ok = |u: u64| {
        let mut z = 10.0 * u as f64;
        while z <= z_max {
            if !mertens_check(u as f64, z, eps) {
                return false;
            }
            z *= 10.0;
        }
        true
    };
    let mut u1 = None;
    for u in (2..=u_max).rev() {
        if !ok(u) {
            break;
        }
        u1 = Some(u);
    }
    u1
}
