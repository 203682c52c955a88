//! Acceptance criteria, one line per criterion.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cluster_lattice::laurent::{mutate_seed, CoefficientMode, LabeledSeed, LaurentPolynomial};
use cluster_lattice::mutation::build_bc;
use cluster_lattice::quivers::{set_difference_adjacency, unique_completion_adjacency, DEFAULT_VERTEX_CAP};
use cluster_lattice::rootsys::{cartan_matrix, positive_roots, CoxeterElement, DynkinType, Root};
use cluster_lattice::verify::{flip_report, iso_report, lattice_report, signs_report, Instance};
use num_bigint::BigInt;

type Outcome = Result<(), String>;

fn poly(nx: usize, ny: usize, terms: &[(&[i32], i64)]) -> LaurentPolynomial {
    LaurentPolynomial::from_terms(nx, ny, terms.iter().map(|(e, c)| (e.to_vec(), BigInt::from(*c))))
}

fn columns(cols: &[[i64; 2]]) -> BTreeSet<Vec<BigInt>> {
    cols.iter().map(|c| c.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Outcome {
    ensure(start.elapsed() < limit, || format!("took {:?}, limit {limit:?}", start.elapsed()))
}

fn label((t, n, c): &Entry) -> String {
    format!("{t}{n} c={c:?}")
}

fn a2_golden() -> Outcome {
    let start = Instant::now();
    let spec = cartan_matrix(DynkinType::A, 2).unwrap();
    let inst = Instance::build(spec, CoxeterElement::from_one_based(&[2, 1]).unwrap(), DEFAULT_VERTEX_CAP)
        .map_err(|e| e.to_string())?;
    let x1 = poly(2, 0, &[(&[1, 0], 1)]);
    let x2 = poly(2, 0, &[(&[0, 1], 1)]);
    let p = poly(2, 0, &[(&[-1, 1], 1), (&[-1, 0], 1)]);
    let q = poly(2, 0, &[(&[1, -1], 1), (&[0, -1], 1)]);
    let r = poly(2, 0, &[(&[0, -1], 1), (&[-1, 0], 1), (&[-1, -1], 1)]);
    let got: BTreeSet<_> = inst.plus.variables().iter().cloned().collect();
    let want: BTreeSet<_> = [&x1, &x2, &p, &q, &r].into_iter().cloned().collect();
    ensure(got == want, || format!("cluster variables {got:?}"))?;

    let clusters = [
        (vec![&x1, &x2], columns(&[[1, 0], [0, 1]])),
        (vec![&x1, &q], columns(&[[1, 1], [0, -1]])),
        (vec![&p, &x2], columns(&[[-1, 0], [0, 1]])),
        (vec![&q, &r], columns(&[[1, 0], [-1, -1]])),
        (vec![&p, &r], columns(&[[-1, 0], [0, -1]])),
    ];
    let mut ids = Vec::new();
    for (vars, cset) in &clusters {
        let v = inst.plus.find_cluster(vars.iter().copied()).ok_or("missing cluster")?;
        let got = inst.plus.quiver.vertices[v].c_set();
        ensure(&got == cset, || format!("C-matrix of cluster {v}: {got:?}"))?;
        ids.push(v);
    }
    let want: BTreeSet<(usize, usize)> =
        [(0, 1), (0, 2), (1, 3), (3, 4), (2, 4)].iter().map(|&(a, b)| (ids[a], ids[b])).collect();
    let got: BTreeSet<(usize, usize)> = inst.plus.quiver.arrows().collect();
    ensure(got == want, || format!("arrows {got:?}, expected {want:?}"))?;
    within(Duration::from_secs(1), start)
}

fn a2_principal_table() -> Outcome {
    let start = Instant::now();
    let spec = cartan_matrix(DynkinType::A, 2).unwrap();
    let bc = build_bc(&spec, &CoxeterElement::from_one_based(&[2, 1]).unwrap()).map_err(|e| e.to_string())?;
    let x1 = poly(2, 2, &[(&[1, 0, 0, 0], 1)]);
    let x2 = poly(2, 2, &[(&[0, 1, 0, 0], 1)]);
    let t1 = poly(2, 2, &[(&[1, -1, 0, 0], 1), (&[0, -1, 0, 1], 1)]);
    let t2 = poly(2, 2, &[(&[-1, 0, 1, 1], 1), (&[-1, -1, 0, 1], 1), (&[0, -1, 0, 0], 1)]);
    let t3 = poly(2, 2, &[(&[-1, 1, 1, 0], 1), (&[-1, 0, 0, 0], 1)]);
    let rows: [([[i64; 2]; 2], [&LaurentPolynomial; 2]); 6] = [
        ([[1, 0], [0, 1]], [&x1, &x2]),
        ([[1, 1], [0, -1]], [&x1, &t1]),
        ([[-1, -1], [1, 0]], [&t2, &t1]),
        ([[0, -1], [-1, 0]], [&t2, &t3]),
        ([[0, 1], [-1, 0]], [&x2, &t3]),
        ([[0, 1], [1, 0]], [&x2, &x1]),
    ];
    let mut seed = LabeledSeed::initial(bc, CoefficientMode::Principal);
    for (t, (ys, xs)) in rows.iter().enumerate() {
        if t > 0 {
            let k = if t % 2 == 1 { 1 } else { 0 };
            seed = mutate_seed(&seed, k).map_err(|e| e.to_string())?;
        }
        for j in 0..2 {
            ensure(seed.coeffs[j].exponents == ys[j].to_vec(), || {
                format!("t={t}: y{} = {:?}", j + 1, seed.coeffs[j].exponents)
            })?;
            ensure(&seed.vars[j] == xs[j], || format!("t={t}: x{} = {}", j + 1, seed.vars[j]))?;
        }
    }
    within(Duration::from_secs(1), start)
}

type Entry = (DynkinType, usize, Vec<usize>);

struct Suite {
    entries: Vec<(Entry, Instance)>,
    build_time: Duration,
}

fn build_suite() -> Result<Suite, String> {
    let start = Instant::now();
    let mut entries = Vec::new();
    for entry in common::test_matrix() {
        let (t, n, c) = &entry;
        let spec = cartan_matrix(*t, *n).map_err(|e| e.to_string())?;
        let c = CoxeterElement::from_one_based(c).map_err(|e| e.to_string())?;
        let inst = Instance::build(spec, c, DEFAULT_VERTEX_CAP).map_err(|e| format!("{}: {e}", label(&entry)))?;
        entries.push((entry, inst));
    }
    Ok(Suite { entries, build_time: start.elapsed() })
}

fn counts(suite: &Suite) -> Outcome {
    for (entry, inst) in &suite.entries {
        let (t, n, _) = entry;
        let ex = inst.plus.vertex_count();
        let cc = inst.c_clusters.vertex_count();
        let so = inst.cambrian.vertex_count();
        let want = common::catalan(*t, *n) as usize;
        ensure(ex == cc && cc == so && so == want, || {
            format!("{}: exchange {ex}, c-clusters {cc}, sortables {so}, expected {want}", label(entry))
        })?;
        if (*t, *n) == (DynkinType::A, 2) {
            ensure(ex == 5, || "A2 count is not 5".into())?;
        }
    }
    ensure(suite.build_time < Duration::from_secs(60), || format!("build took {:?}", suite.build_time))
}

fn diagram(suite: &Suite) -> Outcome {
    let start = Instant::now();
    for (entry, inst) in &suite.entries {
        let r = iso_report(inst).map_err(|e| e.to_string())?;
        ensure(r.passed, || format!("{}: {r:#?}", label(entry)))?;
    }
    ensure(suite.build_time + start.elapsed() < Duration::from_secs(120), || {
        format!("took {:?}", suite.build_time + start.elapsed())
    })
}

fn signs(suite: &Suite) -> Outcome {
    for (entry, inst) in &suite.entries {
        let r = signs_report(inst).map_err(|e| e.to_string())?;
        ensure(r.passed && r.seeds_checked == 2 * inst.plus.vertex_count(), || format!("{}: {r:#?}", label(entry)))?;
        for q in [&inst.plus, &inst.minus] {
            for (v, vx) in q.quiver.vertices.iter().enumerate() {
                let f = &vx.seed.frame;
                ensure(f.c_matrix.is_column_sign_coherent(), || {
                    format!("{}: cluster {v} not sign-coherent", label(entry))
                })?;
                ensure(common::duality_holds(&f.g_matrix, &f.c_matrix, f.b.skew_symmetrizer()), || {
                    format!("{}: duality fails at cluster {v}: G={} C={}", label(entry), f.g_matrix, f.c_matrix)
                })?;
            }
        }
    }
    Ok(())
}

fn flips(suite: &Suite) -> Outcome {
    for (entry, inst) in &suite.entries {
        let r = flip_report(inst).map_err(|e| e.to_string())?;
        ensure(r.passed, || format!("{}: {r:#?}", label(entry)))?;
        ensure(r.flip.flipped_edges == r.flip.positive_root_pairs, || format!("{}: flipped count", label(entry)))?;
        if entry.0 == DynkinType::A && entry.2 == [2, 1] {
            ensure(r.flip.flipped_edges == 1, || format!("A2 flipped {} edges", r.flip.flipped_edges))?;
        }
        if entry.1 == 1 {
            ensure(r.flip.flipped_edges == 0, || "A1 flipped an edge".into())?;
        }
    }
    Ok(())
}

fn lattices(suite: &Suite) -> Outcome {
    for (entry, inst) in &suite.entries {
        let r = lattice_report(inst);
        ensure(r.exchange.passed() && r.cambrian.passed(), || format!("{}: {r:#?}", label(entry)))?;
    }
    Ok(())
}

fn oracles(suite: &Suite) -> Outcome {
    for (entry, inst) in &suite.entries {
        let (t, n, word1) = entry;
        let word: Vec<usize> = word1.iter().map(|i| i - 1).collect();
        let c = common::cartan(*t, *n);
        let dy = &inst.dynamics;

        // (a) sortables against the full Weyl group
        if *n <= 3 {
            let oracle = common::sortables_oracle(&c, &word);
            let got: std::collections::HashSet<common::SortedElement> = inst
                .cambrian
                .vertices
                .iter()
                .map(|s| {
                    let m = s.element.matrix();
                    let rows = (0..*n).map(|i| m[i * n..(i + 1) * n].to_vec()).collect();
                    (rows, s.sorting_word.clone())
                })
                .collect();
            ensure(got == oracle, || format!("{}: sortables differ from the Weyl group oracle", label(entry)))?;
        }

        // (b) adjacency two ways, clusters against brute force
        let clusters = &inst.c_clusters.vertices;
        let uc = unique_completion_adjacency(dy, clusters).map_err(|e| e.to_string())?;
        ensure(set_difference_adjacency(clusters) == uc, || format!("{}: adjacency differs", label(entry)))?;
        let roots = common::almost_positive(&c);
        let lib_roots: Vec<Vec<i64>> = dy.roots().iter().map(|r| r.0.clone()).collect();
        ensure(roots == lib_roots, || format!("{}: almost positive roots differ", label(entry)))?;
        let mut degree = BTreeMap::new();
        for (a, ra) in roots.iter().enumerate() {
            for (b, rb) in roots.iter().enumerate() {
                let d = common::compat_degree_all_reductions(&c, &word, ra, rb)
                    .ok_or_else(|| format!("{}: reductions of ({ra:?}∥{rb:?}) disagree", label(entry)))?;
                ensure(d as u64 == dy.degree(a, b), || format!("{}: degree ({ra:?}∥{rb:?})", label(entry)))?;
                degree.insert((a, b), d);
            }
        }
        let brute = common::brute_force_clusters(&roots, |a, b| a != b && degree[&(a, b)] == 0 && degree[&(b, a)] == 0);
        let lib: BTreeSet<BTreeSet<Vec<i64>>> =
            clusters.iter().map(|cl| cl.roots().iter().map(|r| r.0.clone()).collect()).collect();
        ensure(brute == lib, || format!("{}: brute-force clusters differ", label(entry)))?;
    }

    // (c) positive roots at rank ≤ 4
    use DynkinType::*;
    for (t, n) in [(A, 1), (A, 2), (A, 3), (A, 4), (B, 2), (B, 3), (B, 4), (C, 3), (C, 4), (D, 4), (F, 4), (G, 2)] {
        let spec = cartan_matrix(t, n).unwrap();
        let got: BTreeSet<Vec<i64>> = positive_roots(&spec).unwrap().into_iter().map(|Root(v)| v).collect();
        let oracle = common::orbit_positive_roots(&spec.cartan);
        ensure(got == oracle && got.len() == common::positive_root_count(t, n), || {
            format!("{t}{n}: {} positive roots, oracle {}", got.len(), oracle.len())
        })?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let mut passed = Vec::new();
    let mut line = |id: usize, name: &str, start: Instant, outcome: Outcome| {
        let secs = start.elapsed().as_secs_f64();
        match &outcome {
            Ok(()) => println!("criterion {id}: PASS  {name} ({secs:.2}s)"),
            Err(e) => println!("criterion {id}: FAIL  {name} ({secs:.2}s): {e}"),
        }
        passed.push(outcome.is_ok());
    };

    let t = Instant::now();
    line(1, "A2 cluster variables and C-matrices", t, a2_golden());
    let t = Instant::now();
    line(2, "A2 principal-coefficient table", t, a2_principal_table());

    let t = Instant::now();
    match build_suite() {
        Err(e) => {
            for (id, name) in [
                (3, "count agreement"),
                (4, "quiver isomorphism diagram"),
                (5, "sign coherence and duality"),
                (6, "arrow flips and τ_c^-1 C-matrices"),
                (7, "lattice property"),
                (8, "oracle agreement"),
            ] {
                line(id, name, t, Err(format!("suite build failed: {e}")));
            }
        }
        Ok(suite) => {
            line(3, "count agreement", t, counts(&suite));
            let t = Instant::now();
            line(4, "quiver isomorphism diagram", t, diagram(&suite));
            let t = Instant::now();
            line(5, "sign coherence and duality", t, signs(&suite));
            let t = Instant::now();
            line(6, "arrow flips and τ_c^-1 C-matrices", t, flips(&suite));
            let t = Instant::now();
            line(7, "lattice property", t, lattices(&suite));
            let t = Instant::now();
            line(8, "oracle agreement", t, oracles(&suite));
        }
    }
    if passed.iter().all(|&p| p) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
