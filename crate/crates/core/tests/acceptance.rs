//! End-to-end acceptance checks. Each criterion prints one line; the process
//! exits non-zero if any criterion fails or overruns its time budget.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hypero::arrangement::{bounded, feasible, gale_dual, validate, CategoryODatum};
use hypero::blockalg::{
    cartan_matrix, derived_quotient_homology, hilbert_matrix, quotient_by_unbounded, tor0_stratifying_check, BlockAlgebra,
    Flavor,
};
use hypero::chamber_order::{build_order_tables, predicted_dimensions};
use hypero::dualities::{mirror_dim_check, skeleton_koszul_check};
use hypero::fixtures::{ex1, ex2, fixtures, random_datum};
use hypero::qpoly::{QMatrix, QPoly};
use hypero::repcat::{
    bgg_reciprocity_check, exceptional_collection_check, koszulity_check, standard_filtration_check,
};
use hypero::rh::{rh_iso_check, RhDomain};
use hypero::{par, SignVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn sv(s: &str) -> SignVector {
    s.parse().unwrap()
}

fn q(c: &[i64]) -> QPoly {
    QPoly::from_coeffs(c.to_vec())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_data(seed: u64, count: usize, n_max: usize) -> Vec<CategoryODatum> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_datum(&mut rng, 1, n_max)).collect()
}

fn reorder<T: Clone>(m: &[Vec<T>], perm: &[usize]) -> Vec<Vec<T>> {
    perm.iter().map(|&i| perm.iter().map(|&j| m[i][j].clone()).collect()).collect()
}

/// Graded path counts of the quiver `1 --x--> 2 --y--> 1` modulo `xy = 0`
/// (paths read left to right), by listing words.
fn two_cycle_oracle() -> QMatrix {
    let src = |a: char| if a == 'x' { 0 } else { 1 };
    let dst = |a: char| if a == 'x' { 1 } else { 0 };
    let mut h = vec![vec![vec![0i64; 5]; 2]; 2];
    h[0][0][0] = 1;
    h[1][1][0] = 1;
    let mut words: Vec<String> = vec!["x".into(), "y".into()];
    for len in 1..5 {
        for w in &words {
            if w.contains("xy") {
                continue;
            }
            let (a, b) = (w.chars().next().unwrap(), w.chars().last().unwrap());
            h[src(a)][dst(b)][len] += 1;
        }
        words = words
            .iter()
            .map(|w| {
                let next = if w.ends_with('x') { 'y' } else { 'x' };
                format!("{w}{next}")
            })
            .collect();
    }
    h.into_iter().map(|r| r.into_iter().map(QPoly::from_coeffs).collect()).collect()
}

fn c1_two_cycle() -> Outcome {
    let a = quotient_by_unbounded(&ex1(), Flavor::DeRham).map_err(|e| e.to_string())?;
    ensure(a.num_labels() == 2, || format!("{} simples", a.num_labels()))?;
    ensure(a.dim() == 5, || format!("dim {}", a.dim()))?;
    // present in the order ((+,+), (-,+))
    let perm: Vec<usize> = ["++", "-+"].iter().map(|s| a.label_index(&sv(s)).unwrap()).collect();
    let cartan = reorder(&cartan_matrix(&a), &perm);
    let hilbert = reorder(&hilbert_matrix(&a), &perm);
    ensure(cartan == vec![vec![1, 1], vec![1, 2]], || format!("cartan {cartan:?}"))?;
    let expected = vec![vec![q(&[1]), q(&[0, 1])], vec![q(&[0, 1]), q(&[1, 0, 1])]];
    ensure(hilbert == expected, || format!("hilbert {hilbert:?}"))?;
    let oracle = two_cycle_oracle();
    ensure(hilbert == oracle, || format!("oracle {oracle:?}"))?;
    Ok("2 simples, dim 5, Cartan [[1,1],[1,2]], Hilbert [[1,q],[q,1+q^2]] = path count".into())
}

fn c2_plumbing() -> Outcome {
    let d = ex2();
    let a = quotient_by_unbounded(&d, Flavor::DeRham).map_err(|e| e.to_string())?;
    let tables = build_order_tables(&d).map_err(|e| e.to_string())?;
    ensure(a.num_labels() == 3, || format!("{} simples", a.num_labels()))?;
    ensure(a.dim() == 14, || format!("dim {}", a.dim()))?;
    let cartan = cartan_matrix(&a);
    ensure(cartan == vec![vec![3, 2, 1], vec![2, 2, 1], vec![1, 1, 1]], || format!("cartan {cartan:?}"))?;
    let m = tables.multiplicity_matrix();
    let mtm: Vec<Vec<usize>> =
        (0..3).map(|i| (0..3).map(|j| (0..3).map(|k| (m[k][i] * m[k][j]) as usize).sum()).collect()).collect();
    ensure(mtm == cartan, || format!("M^T M {mtm:?}"))?;
    let sf = standard_filtration_check(&a, &tables).map_err(|e| e.to_string())?;
    ensure(sf.ok(), || format!("{sf:?}"))?;
    let pred = predicted_dimensions(&d).map_err(|e| e.to_string())?;
    ensure(pred.total == 14 && pred.cartan == cartan, || format!("{pred:?}"))?;
    Ok("3 simples, dim 14, Cartan = M^T M = [[3,2,1],[2,2,1],[1,1,1]]; dim V, dim P match".into())
}

fn c3_quotient_dims() -> Outcome {
    let data = random_data(3, 50, 6);
    for d in &data {
        let pred = predicted_dimensions(d).map_err(|e| e.to_string())?;
        let a = quotient_by_unbounded(d, Flavor::DeRham).map_err(|e| e.to_string())?;
        ensure(pred.total == a.dim() && pred.cartan == cartan_matrix(&a), || {
            format!("{}: predicted {} computed {}", d.to_json(), pred.total, a.dim())
        })?;
    }
    let max_n = data.iter().map(|d| d.n).max().unwrap();
    Ok(format!("50 random data (n <= {max_n}): total and Cartan agree"))
}

fn c4_betti_derham() -> Outcome {
    let mut data: Vec<CategoryODatum> = fixtures().into_iter().map(|(_, d)| d).collect();
    data.extend(random_data(4, 20, 5));
    for d in &data {
        let dr = quotient_by_unbounded(d, Flavor::DeRham).map_err(|e| e.to_string())?;
        let b = quotient_by_unbounded(d, Flavor::Betti).map_err(|e| e.to_string())?;
        ensure(dr.labels == b.labels && cartan_matrix(&dr) == cartan_matrix(&b), || d.to_json())?;
    }
    Ok(format!("{} data: Betti and de Rham block dimensions equal", data.len()))
}

fn c5_gale() -> Outcome {
    let mut data: Vec<CategoryODatum> = fixtures().into_iter().map(|(_, d)| d).collect();
    data.extend(random_data(5, 50, 6));
    for d in &data {
        let g = gale_dual(d);
        ensure(validate(&g).is_category_o_datum(), || format!("dual of {} invalid", d.to_json()))?;
        ensure(feasible(d) == bounded(&g) && bounded(d) == feasible(&g), || d.to_json())?;
    }
    Ok(format!("{} data: F(D) = B(D'), B(D) = F(D')", data.len()))
}

fn c6_koszul() -> Outcome {
    let mut data = vec![ex1(), ex2()];
    data.extend(random_data(6, 10, 5));
    for d in &data {
        let a = quotient_by_unbounded(d, Flavor::DeRham).map_err(|e| e.to_string())?;
        let c = koszulity_check(&a, 16).map_err(|e| e.to_string())?;
        ensure(c.tor_linear && c.hilbert_identity, || format!("{}: {:?}", d.to_json(), c.offenders))?;
    }
    Ok(format!("{} data: linear resolutions, H_A(q) E(-q)^T = I", data.len()))
}

fn c7_bgg_exceptional() -> Outcome {
    for (name, d) in fixtures() {
        let a = quotient_by_unbounded(&d, Flavor::DeRham).map_err(|e| e.to_string())?;
        let t = build_order_tables(&d).map_err(|e| e.to_string())?;
        let b = bgg_reciprocity_check(&a, &t).map_err(|e| e.to_string())?;
        ensure(b.ok(), || format!("{name}: {b:?}"))?;
        let e = exceptional_collection_check(&a, &t, 16).map_err(|e| e.to_string())?;
        ensure(e.ok(), || format!("{name}: {:?}", e.violations))?;
    }
    Ok("fixtures: Cartan = M^T M, End(V) = Q, Ext^{>0}(V_a, V_b) = 0 unless a < b".into())
}

fn c8_mirror() -> Outcome {
    let mut data = vec![ex1(), ex2()];
    data.extend(random_data(8, 10, 5));
    for d in &data {
        let r = mirror_dim_check(d, 16).map_err(|e| e.to_string())?;
        ensure(r.ok(), || format!("{}: {:?}", d.to_json(), r.offending))?;
    }
    Ok(format!("{} data: dim e_a A e_b = sum_k dim Ext^k over the Gale dual", data.len()))
}

fn c9_skeleton() -> Outcome {
    for (name, d) in [("EX1", ex1()), ("EX2", ex2())] {
        let r = skeleton_koszul_check(&d, 16).map_err(|e| e.to_string())?;
        ensure(r.ungraded_equal, || format!("{name}: {:?}", r.offending))?;
        if name == "EX1" {
            ensure(r.graded_equal, || format!("{name} graded: {:?} vs {:?}", r.skeleton, r.ext_corner))?;
        }
    }
    Ok("EX1, EX2 ungraded; EX1 graded under the codimension shift".into())
}

fn c10_tor0() -> Outcome {
    for (name, d) in fixtures() {
        let a = BlockAlgebra::build(&d, Flavor::DeRham).map_err(|e| e.to_string())?;
        let r = tor0_stratifying_check(&a, &a.unbounded_feasible(), 8);
        ensure(r.is_iso(), || format!("{name}: {:?}", r.defects))?;
    }
    let a = BlockAlgebra::build(&ex1(), Flavor::DeRham).map_err(|e| e.to_string())?;
    let r = tor0_stratifying_check(&a, &[sv("-+"), sv("+-")], 8);
    ensure(!r.is_iso(), || "no defect for the noncompact idempotent".into())?;
    let first = &r.defects[0];
    Ok(format!(
        "iso through degree 8 on fixtures; EX1 noncompact defect at {}{} degree {}",
        first.left, first.right, first.degree
    ))
}

fn c11_rh() -> Outcome {
    let mut runs = Vec::new();
    for (name, d) in fixtures() {
        if d.n > 4 {
            continue;
        }
        for k in 0..=6 {
            for domain in [RhDomain::Feasible, RhDomain::All] {
                runs.push((name, d.clone(), k, domain));
            }
        }
    }
    let reports = par::map(&runs, |(_, d, k, domain)| rh_iso_check(d, *k, *domain));
    for ((name, _, k, domain), r) in runs.iter().zip(reports) {
        let r = r.map_err(|e| e.to_string())?;
        ensure(r.ok(), || format!("{name} k={k} {domain:?}: {r:?}"))?;
    }
    Ok(format!("{} truncations: unital isomorphisms, m_i -> exp(tau d_i)", runs.len()))
}

fn c12_derived() -> Outcome {
    for (name, d) in fixtures() {
        let a = BlockAlgebra::build(&d, Flavor::DeRham).map_err(|e| e.to_string())?;
        let h = derived_quotient_homology(&a, &a.unbounded_feasible(), 1, 6);
        ensure(h.d_squared_zero && h.h0_matches_naive_quotient(), || format!("{name}: {h:?}"))?;
    }
    let a = BlockAlgebra::build(&ex1(), Flavor::DeRham).map_err(|e| e.to_string())?;
    let h = derived_quotient_homology(&a, &[sv("-+"), sv("+-")], 2, 6);
    ensure(h.d_squared_zero && h.h0_matches_naive_quotient(), || format!("{h:?}"))?;
    let (k, deg) = h.first_higher_class().ok_or("no higher homology on EX1")?;
    ensure(k == 1 && deg <= 6, || format!("first class at ({k}, {deg})"))?;
    Ok(format!("d^2 = 0, H_0 = naive quotient; EX1 both rays: class in H_-1 at internal degree {deg}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Outcome); 12] = [
        ("two-cycle fixture", 1, c1_two_cycle),
        ("plumbing fixture", 1, c2_plumbing),
        ("quotient dimension identity", 30, c3_quotient_dims),
        ("Betti = de Rham", 30, c4_betti_derham),
        ("Gale duality", 20, c5_gale),
        ("Koszulity certificate", 30, c6_koszul),
        ("BGG reciprocity, exceptional collection", 20, c7_bgg_exceptional),
        ("3d-mirror dimension identity", 60, c8_mirror),
        ("skeleton Koszul check", 10, c9_skeleton),
        ("stratifying Tor_0", 10, c10_tor0),
        ("Riemann-Hilbert truncation", 30, c11_rh),
        ("derived quotient", 10, c12_derived),
    ];
    let mut failed = 0;
    let mut total = 0.0;
    for (i, (name, budget, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        total += elapsed.as_secs_f64();
        let in_time = elapsed <= Duration::from_secs(*budget);
        let (status, msg) = match &outcome {
            Ok(m) if in_time => ("PASS", m.clone()),
            Ok(m) => ("FAIL", format!("over budget: {m}")),
            Err(e) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {:>2} {status} {name} [{:.2}s / {budget}s] {msg}", i + 1, elapsed.as_secs_f64());
    }
    println!("acceptance: {} of 12 passed in {total:.1}s", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
