use serde::Serialize;

use polyspaces::confhomology::{build_complex, cohomology_conf, homology_conf};
use polyspaces::exactalg::AbelianGroup;
use polyspaces::poly::{gcd_many, jet, Scalar};
use polyspaces::random;
use polyspaces::scanning::{self, degree_of_jet_map, real_loop_parity, theta_equivariance_check, FloatPoly, ScanConfig};
use polyspaces::spaces::{in_sp_d_n, jet_tuple_t, Conjugate};
use polyspaces::spectral::{betti_bounds, stability_bound_n, verify_stability, Bound};

pub const SUITES: [&str; 3] = ["appendix", "maps", "oracle"];

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

fn check(name: &str, failures: Vec<String>, total: usize) -> Check {
    Check {
        name: name.to_string(),
        passed: failures.is_empty(),
        detail: match failures.first() {
            None => format!("{total} cases"),
            Some(first) => format!("{} of {total} failed; first: {first}", failures.len()),
        },
    }
}

pub fn run(name: &str, seed: u64) -> Option<SuiteReport> {
    let checks = match name {
        "appendix" => appendix(),
        "maps" => maps(seed),
        "oracle" => oracle(),
        _ => return None,
    };
    Some(SuiteReport {
        suite: name.to_string(),
        seed,
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

fn appendix() -> Vec<Check> {
    let mut out = Vec::new();

    let spots = [(5, 2, Bound::Finite(2)), (4, 2, Bound::Infinite), (8, 3, Bound::Finite(6))];
    let fails = spots
        .iter()
        .filter(|&&(d, n, b)| stability_bound_n(d, n).ok() != Some(b))
        .map(|(d, n, b)| format!("N({d},{n}) != {b}"))
        .collect();
    out.push(check("stability_bound_values", fails, spots.len()));

    let mut fails = Vec::new();
    let mut total = 0;
    for n in 2..=6 {
        for d in 2..=12 {
            if (d + 1) / n > 8 {
                continue;
            }
            total += 1;
            match verify_stability(d, n) {
                Ok(r) if r.mismatches.is_empty() && (d / n != (d + 1) / n || r.identical_pages) => {}
                Ok(r) => fails.push(format!("(d={d}, n={n}): {} mismatches", r.mismatches.len())),
                Err(e) => fails.push(format!("(d={d}, n={n}): {e}")),
            }
        }
    }
    out.push(check("verify_stability_grid", fails, total));

    let mut fails = Vec::new();
    for d in 2..=8 {
        let (Ok(bounds), Ok(coh)) = (betti_bounds(d, 2), cohomology_conf(d)) else {
            fails.push(format!("d={d}: computation failed"));
            continue;
        };
        for (j, g) in coh.iter().enumerate().skip(1) {
            let b = bounds.get(&(j as i64)).copied().unwrap_or(0);
            if g.free_rank() > b {
                fails.push(format!("d={d}, j={j}: rank {} > bound {b}", g.free_rank()));
            }
        }
    }
    out.push(check("betti_bounds_vs_oracle", fails, 7));
    out
}

fn oracle() -> Vec<Check> {
    let mut out = Vec::new();
    let fails = (1..=8)
        .filter(|&p| !build_complex(p).is_ok_and(|c| c.is_chain_complex()))
        .map(|p| format!("p={p}"))
        .collect();
    out.push(check("boundary_squares_to_zero", fails, 8));

    let mut fails = Vec::new();
    let homology: Vec<Vec<AbelianGroup>> = (1..=9).map(|p| homology_conf(p).unwrap_or_default()).collect();
    for (i, h) in homology.iter().enumerate().take(8) {
        let p = i + 1;
        if h.first() != Some(&AbelianGroup::free(1)) {
            fails.push(format!("H_0(C_{p}) = {:?}", h.first()));
        }
        if p >= 2 && h.get(1) != Some(&AbelianGroup::free(1)) {
            fails.push(format!("H_1(C_{p}) = {:?}", h.get(1)));
        }
    }
    out.push(check("low_degree_homology", fails, 8));

    let mut fails = Vec::new();
    for (i, h) in homology.iter().enumerate().take(8) {
        let p = i + 1;
        for j in 0..p {
            if p >= 2 * j && homology[i + 1].get(j) != h.get(j) {
                fails.push(format!("H_{j}(C_{p}) vs H_{j}(C_{})", p + 1));
            }
        }
    }
    out.push(check("homological_stability", fails, 8));
    out
}

fn maps(seed: u64) -> Vec<Check> {
    let mut out = Vec::new();
    let mut rng = random::rng(seed);

    let mut fails = Vec::new();
    let mut total = 0;
    for d in 1..=6 {
        for n in 2..=4 {
            for _ in 0..20 {
                let f = random::monic_mixed(&mut rng, d, n - 1, true);
                if !in_sp_d_n(&f, n).member {
                    continue;
                }
                total += 1;
                let t = jet_tuple_t(&f, n).expect("monic of positive degree");
                let ok = t.iter().all(|p| p.is_monic() && p.degree() == Some(d))
                    && gcd_many(t.iter()).is_ok_and(|g| g.is_constant());
                if !ok {
                    fails.push(format!("f = {f}, n = {n}"));
                }
            }
        }
    }
    out.push(check("jet_tuple_coprime", fails, total));

    let mut fails = Vec::new();
    let mut total = 0;
    let cfg = ScanConfig::default();
    for d in 1..=6 {
        for n in 2..=4 {
            for k in 0..10 {
                total += 1;
                let f = scanning::random_member(&mut rng, d, n, 1e-2, 1.0);
                let cfg = ScanConfig { seed: seed ^ (k as u64 + 1), ..cfg.clone() };
                match degree_of_jet_map(&f, n, &cfg) {
                    Ok(r) if r.degree == d => {}
                    Ok(r) => fails.push(format!("d={d}, n={n}: degree {}", r.degree)),
                    Err(e) => fails.push(format!("d={d}, n={n}: {e}")),
                }
            }
        }
    }
    out.push(check("jet_map_degree", fails, total));

    let mut fails = Vec::new();
    let mut total = 0;
    for d in 1..=6 {
        for n in 3..=5 {
            for _ in 0..10 {
                total += 1;
                let f = FloatPoly::from_exact(&random::real_member(&mut rng, d, n));
                match real_loop_parity(&f, n) {
                    Ok(p) if p as usize == d % 2 => {}
                    Ok(p) => fails.push(format!("d={d}, n={n}: parity {p}")),
                    Err(e) => fails.push(format!("d={d}, n={n}: {e}")),
                }
            }
        }
    }
    out.push(check("real_loop_parity", fails, total));

    let mut fails = Vec::new();
    for _ in 0..100 {
        let f = random::monic(&mut rng, 4, 5, true);
        let z = random::scalar(&mut rng, 5, 3, true);
        if jet(&f.theta(), &z.theta(), 3) != jet(&f, &z, 3).theta() {
            fails.push(format!("f = {f}, z = {z}"));
        }
        let dev = theta_equivariance_check(&FloatPoly::from_exact(&f), 3, &cfg);
        if dev >= 1e-12 * (1.0 + max_abs(&f)) {
            fails.push(format!("float deviation {dev:e} for f = {f}"));
        }
    }
    out.push(check("theta_equivariance", fails, 100));
    out
}

fn max_abs(f: &polyspaces::poly::Polynomial) -> f64 {
    f.coeffs().iter().map(Scalar::to_complex64).map(|c| c.norm()).fold(0.0, f64::max)
}
