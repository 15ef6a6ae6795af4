//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! (run with `-- --nocapture` to see them on success).
//!
//! Expected values tagged "independent oracle" are computed inside the test
//! by a route that never touches the implementation it checks: brute-force
//! bit enumeration for state counts, Faddeev-LeVerrier characteristic
//! polynomials with derivative-chain bisection for eigenvalues, LU
//! elimination for determinants, and closed forms for the two-site energies.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use superlattice::cluster::{self, ScanConfig, SymmetryGroup};
use superlattice::constants::PhysicalConstants;
use superlattice::eigen::jacobi_eigen;
use superlattice::fock::{enumerate_states, s_squared_matrix, Statistics};
use superlattice::model::DimensionlessCouplings;
use superlattice::optics::{
    classify_species, dipole_potential, josephson_frequency, recoil_energy, DipoleField,
    LatticeParams, Species,
};
use superlattice::spectra::{
    evolution_frequencies, extract_couplings, singlet_energy, transition_point,
    transition_point_closed_form, triplet_energy,
};
use superlattice::{build_hubbard, build_juvj, CouplingSet, Error, LatticeGraph, Matrix};

type Check = std::result::Result<String, String>;

fn run(name: &str, body: impl FnOnce() -> Check) {
    match body() {
        Ok(detail) => println!("acceptance criterion {name}: PASS: {detail}"),
        Err(why) => {
            println!("acceptance criterion {name}: FAIL: {why}");
            panic!("acceptance criterion {name} failed: {why}");
        }
    }
}

/// Orthonormal S = 0 eigenvectors of the sector, from the S² spectrum.
fn singlet_columns(basis: &superlattice::Basis) -> Vec<Vec<f64>> {
    let eig = jacobi_eigen(&s_squared_matrix(basis)).expect("S² is symmetric");
    eig.values
        .iter()
        .zip(eig.vectors)
        .filter(|(v, _)| v.abs() < 1e-6)
        .map(|(_, vec)| vec)
        .collect()
}

#[test]
fn criterion_1_closed_form_ed_equivalence() {
    run("1 (closed-form/ED equivalence)", || {
        let basis = enumerate_states(2, 1, 1, Statistics::Fermion).map_err(|e| e.to_string())?;
        let up = enumerate_states(2, 2, 0, Statistics::Fermion).map_err(|e| e.to_string())?;
        let down = enumerate_states(2, 0, 2, Statistics::Fermion).map_err(|e| e.to_string())?;
        let graph = LatticeGraph::two_site();
        let singlets = singlet_columns(&basis);
        let mut points = 0usize;
        let mut worst_singlet = 0.0f64;
        let mut worst_triplet = 0.0f64;
        for iu in 0..=10 {
            for iv in 0..=5 {
                for ij in 0..=10 {
                    let (u, v, j) = (0.5 * iu as f64, 0.5 * iv as f64, 0.1 * ij as f64);
                    let dc = DimensionlessCouplings::new(u, v, j);
                    let c = dc.to_couplings();
                    let h = build_juvj(&basis, &graph, &c).map_err(|e| e.to_string())?;
                    let block = h.matrix().project(&singlets);
                    let ground = jacobi_eigen(&block).map_err(|e| e.to_string())?.values[0];
                    worst_singlet = worst_singlet.max((ground - singlet_energy(&dc)).abs());
                    let hu = build_juvj(&up, &graph, &c).map_err(|e| e.to_string())?;
                    let hd = build_juvj(&down, &graph, &c).map_err(|e| e.to_string())?;
                    worst_triplet = worst_triplet.max((hu.entry(0, 0) - triplet_energy(&dc)).abs());
                    if hu.entry(0, 0) != hd.entry(0, 0) {
                        return Err(format!("polarized sectors split at ({u},{v},{j})"));
                    }
                    points += 1;
                }
            }
        }
        if points != 726 {
            return Err(format!("grid has {points} points, expected 726"));
        }
        if worst_singlet > 1e-10 {
            return Err(format!("singlet ED deviates from closed form by {worst_singlet:.3e}"));
        }
        if worst_triplet > 1e-12 {
            return Err(format!("triplet ED deviates from closed form by {worst_triplet:.3e}"));
        }
        Ok(format!(
            "726 points, singlet dev {worst_singlet:.1e} <= 1e-10, triplet dev {worst_triplet:.1e} <= 1e-12"
        ))
    });
}

#[test]
fn criterion_2_hubbard_limit() {
    run("2 (two-site Hubbard eigenvalues)", || {
        let basis = enumerate_states(2, 1, 1, Statistics::Fermion).map_err(|e| e.to_string())?;
        let graph = LatticeGraph::two_site();
        for u_over_j in [0.0, 1.0, 4.0, 12.0] {
            let c = CouplingSet::new(1.0, u_over_j, 0.0, 0.0).map_err(|e| e.to_string())?;
            let h = build_hubbard(&basis, &graph, &c).map_err(|e| e.to_string())?;
            let got = jacobi_eigen(h.matrix()).map_err(|e| e.to_string())?.values;
            let root = (u_over_j * u_over_j + 16.0).sqrt();
            let mut expect = vec![
                0.0,
                u_over_j,
                0.5 * (u_over_j + root),
                0.5 * (u_over_j - root),
            ];
            expect.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for (g, e) in got.iter().zip(&expect) {
                if (g - e).abs() > 1e-10 {
                    return Err(format!("U/J={u_over_j}: eigenvalue {g} vs expected {e}"));
                }
            }
            // splittings from the ground state reproduce hbar w1, w2
            let f = evolution_frequencies(&c, 1.0).map_err(|e| e.to_string())?;
            let ground = got[0];
            let split_upper = u_over_j - ground; // to the antisymmetric doublon level
            let split_lower = 0.0 - ground; // to the Sz = 0 triplet level
            if (split_upper - f.w1).abs() > 1e-10 || (split_lower - f.w2).abs() > 1e-10 {
                return Err(format!(
                    "U/J={u_over_j}: splittings ({split_upper}, {split_lower}) vs hbar(w1,w2)=({}, {})",
                    f.w1, f.w2
                ));
            }
        }
        Ok("eigenvalues {0, U, (U±sqrt(U²+16J²))/2}/J and w1/w2 splittings at U/J in {0,1,4,12}".into())
    });
}

#[test]
fn criterion_3_transition_point() {
    run("3 (transition point)", || {
        let tp = transition_point(3.0, 0.0).map_err(|e| e.to_string())?;
        if (tp - 0.04110353).abs() > 1e-6 {
            return Err(format!("transition_point(3,0) = {tp}, expected 0.04110353 ± 1e-6"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let u: f64 = rng.gen_range(0.0..8.0);
            let v: f64 = u * rng.gen::<f64>(); // 0 <= v <= u
            let bisected = transition_point(u, v).map_err(|e| e.to_string())?;
            let closed = transition_point_closed_form(u, v);
            worst = worst.max((bisected - closed).abs());
        }
        if worst > 1e-10 {
            return Err(format!("bisection vs closed form deviates by {worst:.3e}"));
        }
        Ok(format!("tp(3,0) = {tp:.8} and 100 random (u,v) agree with the closed form to {worst:.1e}"))
    });
}

#[test]
fn criterion_4_frequency_round_trip() {
    run("4 (frequency round trip)", || {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut worst_rel = 0.0f64;
        let mut worst_residual = 0.0f64;
        for _ in 0..1000 {
            let j: f64 = rng.gen_range(0.1..5.0);
            let u: f64 = rng.gen_range(0.0..20.0);
            let v: f64 = rng.gen_range(0.0..5.0);
            let jex: f64 = rng.gen_range(0.0..2.0);
            let c = CouplingSet::new(j, u, v, jex).map_err(|e| e.to_string())?;
            let f = evolution_frequencies(&c, 1.0).map_err(|e| e.to_string())?;
            let back = extract_couplings(&f).map_err(|e| e.to_string())?;
            let scale = j.max(u).max(v).max(jex).max(1.0);
            for (a, b) in [
                (j, back.couplings.hop_j),
                (u, back.couplings.onsite_u),
                (v, back.couplings.intersite_v),
                (jex, back.couplings.superexchange_jex),
            ] {
                worst_rel = worst_rel.max((a - b).abs() / scale);
            }
            worst_residual = worst_residual.max(back.relative_residual);
        }
        if worst_rel > 1e-10 {
            return Err(format!("round-trip relative error {worst_rel:.3e} > 1e-10"));
        }
        if worst_residual > 1e-12 {
            return Err(format!("consistency residual {worst_residual:.3e} > 1e-12"));
        }
        Ok(format!(
            "1000 draws: worst relative error {worst_rel:.1e}, worst residual {worst_residual:.1e}"
        ))
    });
}

/// Independent oracle: count (n_up, n_down) fermionic configurations by raw
/// bitmask enumeration.
fn brute_force_fermion_count(n_sites: usize, n_up: u32, n_down: u32) -> usize {
    let limit = 1u32 << n_sites;
    let ups = (0..limit).filter(|m| m.count_ones() == n_up).count();
    let downs = (0..limit).filter(|m| m.count_ones() == n_down).count();
    ups * downs
}

#[test]
fn criterion_5_state_counts() {
    run("5 (cluster state counts)", || {
        let sz0 = enumerate_states(16, 1, 1, Statistics::Fermion).map_err(|e| e.to_string())?;
        let pol = enumerate_states(16, 2, 0, Statistics::Fermion).map_err(|e| e.to_string())?;
        let bos = enumerate_states(16, 2, 0, Statistics::Boson).map_err(|e| e.to_string())?;
        if sz0.len() != 256 || 2 * pol.len() != 240 || bos.len() != 136 {
            return Err(format!(
                "16-site counts: {} / {} / {}, expected 256 / 240 / 136",
                sz0.len(),
                2 * pol.len(),
                bos.len()
            ));
        }
        // independent oracle: raw popcount enumeration
        if brute_force_fermion_count(16, 1, 1) != 256
            || 2 * brute_force_fermion_count(16, 2, 0) != 240
        {
            return Err("bitmask oracle disagrees with 256/240".into());
        }
        // two spinless bosons on n sites: unordered site pairs incl. doubles
        let mut boson_oracle = 0usize;
        for a in 0..16 {
            for b in a..16 {
                let _ = (a, b);
                boson_oracle += 1;
            }
        }
        if boson_oracle != 136 {
            return Err("pair-enumeration oracle disagrees with 136".into());
        }
        // six two-site configurations
        let two_sz0 = enumerate_states(2, 1, 1, Statistics::Fermion).map_err(|e| e.to_string())?;
        let two_up = enumerate_states(2, 2, 0, Statistics::Fermion).map_err(|e| e.to_string())?;
        let two_down = enumerate_states(2, 0, 2, Statistics::Fermion).map_err(|e| e.to_string())?;
        if two_sz0.len() + two_up.len() + two_down.len() != 6 {
            return Err("two-site sector does not hold six states".into());
        }
        // true spin multiplicities inside the 256-dim sector
        match cluster::count_cluster_states(16, Statistics::Fermion).map_err(|e| e.to_string())? {
            cluster::StateCounts::Fermion { singlet, triplet_sz_zero, .. } => {
                if singlet != 136 || triplet_sz_zero != 120 {
                    return Err(format!(
                        "S² multiplicities {singlet}/{triplet_sz_zero}, expected 136/120"
                    ));
                }
            }
            _ => unreachable!(),
        }
        Ok("256 / 240 / 136 plus the six two-site states; S² splits 256 into 136 + 120".into())
    });
}

#[test]
fn criterion_6_scan_reproduction() {
    run("6 (AFM-to-FM scan)", || {
        let scan = cluster::scan_dataset(&ScanConfig::default()).map_err(|e| e.to_string())?;
        let mut failures: Vec<String> = Vec::new();
        let first = &scan.rows[0];
        if first.e_afm >= first.e_fm || first.e_fm != 0.0 {
            failures.push(format!(
                "at j=0 expected e_afm < e_fm = 0, got e_afm={} e_fm={}",
                first.e_afm, first.e_fm
            ));
        }
        let flips = scan.rows.windows(2).filter(|w| w[0].ground != w[1].ground).count();
        if flips != 1 {
            failures.push(format!("expected exactly one ground-label flip, got {flips}"));
        }
        match scan.crossing {
            Some(jc) if jc > 0.0 && jc < 0.5 => {}
            other => failures.push(format!("crossing {other:?} not inside (0, 0.5)")),
        }
        if !scan.rows.windows(2).all(|w| w[1].e_fm < w[0].e_fm) {
            failures.push("e_fm is not strictly decreasing".into());
        }
        if !scan.rows.windows(2).all(|w| w[1].e_afm >= w[0].e_afm - 1e-12) {
            let peak = scan
                .rows
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.e_afm.partial_cmp(&b.1.e_afm).unwrap())
                .unwrap();
            failures.push(format!(
                "e_afm is not nondecreasing over [0, 0.5]: it rises to {:.6} at j={:.3} and then \
                 falls to {:.6} at j=0.5 (the lowest-singlet level acquires a descending slope of \
                 -8 in units of J once the pair-exchange term dominates, while the polarized \
                 level descends at -16; the flip itself still happens exactly once)",
                peak.1.e_afm,
                peak.1.jex_over_4j,
                scan.rows.last().unwrap().e_afm
            ));
        }
        // two-site scan crossing consistency with criterion 3
        let two = cluster::rvb_scan_sequential(&LatticeGraph::two_site(), 3.0, 0.0, 0.5, 101)
            .map_err(|e| e.to_string())?;
        let tp = transition_point(3.0, 0.0).map_err(|e| e.to_string())?;
        match two.crossing {
            Some(jc) if (jc - tp).abs() <= 1e-8 => {}
            other => failures.push(format!(
                "two-site scan crossing {other:?} does not match transition point {tp} within 1e-8"
            )),
        }
        if failures.is_empty() {
            Ok(format!(
                "qualitative scan holds; ring crossing at j = {:.6}",
                scan.crossing.unwrap_or(f64::NAN)
            ))
        } else {
            Err(failures.join("; "))
        }
    });
}

#[test]
fn criterion_7_symmetry_reduction() {
    run("7 (symmetry reduction vs full ED)", || {
        let graph = LatticeGraph::plaquette_ring();
        let basis = enumerate_states(4, 2, 2, Statistics::Fermion).map_err(|e| e.to_string())?;
        let rectangle = SymmetryGroup::rectangle();
        let dihedral = SymmetryGroup::dihedral_square();
        let mut detail = String::new();
        for j in [0.0, 0.2] {
            let c = DimensionlessCouplings::new(3.0, 0.0, j).to_couplings();
            let h = build_juvj(&basis, &graph, &c).map_err(|e| e.to_string())?;
            if h.dim() != 36 {
                return Err(format!("half-filled plaquette sector is {}-dim, expected 36", h.dim()));
            }
            let full = jacobi_eigen(h.matrix()).map_err(|e| e.to_string())?.values[0];
            let reduced =
                cluster::symmetry_reduce(&h, &rectangle).map_err(|e| e.to_string())?;
            let reduced_lowest = jacobi_eigen(&reduced.matrix).map_err(|e| e.to_string())?.values[0];
            if (reduced_lowest - full).abs() > 1e-10 {
                return Err(format!(
                    "j={j}: rectangle-group block lowest {reduced_lowest} vs full ground {full}"
                ));
            }
            // the full dihedral block is smaller but the ground state is odd
            // under the quarter rotation, so its lowest eigenvalue sits above
            let d4 = cluster::symmetry_reduce(&h, &dihedral).map_err(|e| e.to_string())?;
            let d4_lowest = jacobi_eigen(&d4.matrix).map_err(|e| e.to_string())?.values[0];
            if d4_lowest < full - 1e-10 {
                return Err(format!("j={j}: dihedral block dips below the full ground"));
            }
            if reduced.dimension != 12 || d4.dimension != 6 {
                return Err(format!(
                    "reduced dimensions (rectangle {}, dihedral {}) changed from (12, 6)",
                    reduced.dimension, d4.dimension
                ));
            }
            detail = format!(
                "rectangle block 12-dim matches the 36-dim ground to 1e-10; dihedral block 6-dim \
                 lies {:.3} above it at j={j}",
                d4_lowest - full
            );
        }
        Ok(detail)
    });
}

#[test]
fn criterion_8_optics() {
    run("8 (optics laws)", || {
        let natural = PhysicalConstants::natural();
        for v2 in [0.5, 1.0, 2.25] {
            let p = LatticeParams::new(4.0 * v2, v2, 1.0, 0.0, 1.0, 1.0)
                .map_err(|e| e.to_string())?;
            if josephson_frequency(&p, &natural).map_err(|e| e.to_string())? != 0.0 {
                return Err(format!("josephson(v1 = 4 v2) not exactly zero at v2={v2}"));
            }
        }
        let steep = LatticeParams::new(5.0, 1.0, 1.0, 0.0, 1.0, 1.0).map_err(|e| e.to_string())?;
        match josephson_frequency(&steep, &natural) {
            Err(Error::Domain(_)) => {}
            other => return Err(format!("v1 > 4 v2 should be a DomainError, got {other:?}")),
        }
        // scaling laws, exact in floating point
        let er = recoil_energy(1.3, 0.7, &natural);
        if recoil_energy(1.3, 1.4, &natural) != er / 4.0 {
            return Err("recoil lambda -> 2 lambda is not exactly E_r/4".into());
        }
        if recoil_energy(2.6, 0.7, &natural) != er / 2.0 {
            return Err("recoil m -> 2m is not exactly E_r/2".into());
        }
        if recoil_energy(1.0, 1.0, &natural) != 0.5 {
            return Err("natural-units recoil energy at m = lambda = 1 is not 1/2".into());
        }
        let field = DipoleField::new(1.7, 0.9, 2.0, 3.0).map_err(|e| e.to_string())?;
        let doubled = DipoleField::new(3.4, 0.9, 2.0, 3.0).map_err(|e| e.to_string())?;
        if dipole_potential(&doubled, &natural) != 2.0 * dipole_potential(&field, &natural) {
            return Err("dipole potential is not exactly linear in intensity".into());
        }
        // seven common isotopes: 4 bosons, 3 fermions
        let mut bosons = 0;
        let mut fermions = 0;
        for (z, n) in [(37u32, 50u32), (11, 12), (19, 20), (55, 78), (19, 21), (3, 3), (38, 49)] {
            match classify_species(&Species::neutral(z, n).map_err(|e| e.to_string())?) {
                Statistics::Boson => bosons += 1,
                Statistics::Fermion => fermions += 1,
            }
        }
        if bosons != 4 || fermions != 3 {
            return Err(format!("isotope classification gave {bosons} bosons / {fermions} fermions"));
        }
        Ok("josephson zero/domain cases, exact scaling laws, 4 bosons + 3 fermions".into())
    });
}

// ---------- eigensolver oracles (test-local, independent of Jacobi) ----------

/// det(lambda I - A) coefficients (ascending powers) via Faddeev-LeVerrier.
fn char_poly(m: &Matrix) -> Vec<f64> {
    let n = m.dim();
    let mut coeffs = vec![0.0; n + 1];
    coeffs[n] = 1.0;
    let mut mk = Matrix::zeros(n); // M_0 = 0
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0.0;
                for l in 0..n {
                    acc += m.get(i, l) * mk.get(l, j);
                }
                next.set(i, j, acc);
            }
        }
        for i in 0..n {
            next.add(i, i, coeffs[n - k + 1]);
        }
        // c_{n-k} = -tr(A M_k) / k
        let mut tr = 0.0;
        for i in 0..n {
            for l in 0..n {
                tr += m.get(i, l) * next.get(l, i);
            }
        }
        coeffs[n - k] = -tr / k as f64;
        mk = next;
    }
    coeffs
}

fn poly_eval(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

fn poly_derivative(coeffs: &[f64]) -> Vec<f64> {
    coeffs.iter().enumerate().skip(1).map(|(k, c)| k as f64 * c).collect()
}

fn bisect_root(coeffs: &[f64], mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = poly_eval(coeffs, lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fmid = poly_eval(coeffs, mid);
        if fmid == 0.0 {
            return mid;
        }
        if (flo < 0.0) == (fmid < 0.0) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// All real roots of a real-rooted polynomial: the roots of the derivative
/// partition the line into monotone intervals.
fn real_roots(coeffs: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    let degree = coeffs.len() - 1;
    if degree == 1 {
        return vec![-coeffs[0] / coeffs[1]];
    }
    let mut breakpoints = vec![lo];
    breakpoints.extend(real_roots(&poly_derivative(coeffs), lo, hi));
    breakpoints.push(hi);
    breakpoints.retain(|x| x.is_finite());
    breakpoints.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut roots = Vec::new();
    for pair in breakpoints.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        if a >= b {
            continue;
        }
        let (fa, fb) = (poly_eval(coeffs, a), poly_eval(coeffs, b));
        if fa == 0.0 {
            roots.push(a);
        } else if fa * fb < 0.0 {
            roots.push(bisect_root(coeffs, a, b));
        }
    }
    roots.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    roots
}

/// Determinant by LU elimination with partial pivoting.
fn lu_determinant(m: &Matrix) -> f64 {
    let n = m.dim();
    let mut a = m.clone();
    let mut det = 1.0f64;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a.get(i, col).abs().partial_cmp(&a.get(j, col).abs()).unwrap())
            .unwrap();
        let pivot_value = a.get(pivot, col);
        if pivot_value == 0.0 {
            return 0.0;
        }
        if pivot != col {
            for j in 0..n {
                let tmp = a.get(col, j);
                a.set(col, j, a.get(pivot, j));
                a.set(pivot, j, tmp);
            }
            det = -det;
        }
        det *= a.get(col, col);
        for i in (col + 1)..n {
            let factor = a.get(i, col) / a.get(col, col);
            for j in col..n {
                a.add(i, j, -factor * a.get(col, j));
            }
        }
    }
    det
}

fn random_symmetric(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    let mut m = Matrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let x: f64 = rng.gen_range(-1.0..1.0);
            m.set(i, j, x);
            m.set(j, i, x);
        }
    }
    m
}

#[test]
fn criterion_9_eigensolver_oracle() {
    run("9 (eigensolver vs characteristic polynomial)", || {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut worst_root = 0.0f64;
        for trial in 0..500 {
            let n = 1 + trial % 4;
            let m = random_symmetric(&mut rng, n);
            let eig = jacobi_eigen(&m).map_err(|e| e.to_string())?;
            // Gershgorin bound
            let mut bound = 0.0f64;
            for i in 0..n {
                let row: f64 = (0..n).map(|j| m.get(i, j).abs()).sum();
                bound = bound.max(row);
            }
            let roots = real_roots(&char_poly(&m), -bound - 1.0, bound + 1.0);
            if roots.len() != n {
                return Err(format!("oracle found {} roots for n={n}", roots.len()));
            }
            for (value, root) in eig.values.iter().zip(&roots) {
                worst_root = worst_root.max((value - root).abs());
            }
        }
        if worst_root > 1e-9 {
            return Err(format!("worst eigenvalue-vs-root deviation {worst_root:.3e} > 1e-9"));
        }
        // trace and determinant identities up to n = 50
        let mut worst_trace = 0.0f64;
        let mut worst_det = 0.0f64;
        for n in [2usize, 5, 10, 25, 50] {
            for _ in 0..4 {
                let m = random_symmetric(&mut rng, n);
                let eig = jacobi_eigen(&m).map_err(|e| e.to_string())?;
                let sum: f64 = eig.values.iter().sum();
                let trace = m.trace();
                worst_trace =
                    worst_trace.max((sum - trace).abs() / trace.abs().max(1.0));
                let product: f64 = eig.values.iter().product();
                let det = lu_determinant(&m);
                worst_det = worst_det.max((product - det).abs() / det.abs().max(1e-12));
            }
        }
        if worst_trace > 1e-10 {
            return Err(format!("trace identity off by {worst_trace:.3e}"));
        }
        if worst_det > 1e-10 {
            return Err(format!("determinant identity off by {worst_det:.3e}"));
        }
        Ok(format!(
            "500 char-poly matches (worst {worst_root:.1e}), trace/det identities to {:.1e}",
            worst_trace.max(worst_det)
        ))
    });
}
