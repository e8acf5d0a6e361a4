//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs the library directly and the `ncchar` binary where the
//! criterion is about command output.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};

use ncchar::free_module::scaled_chi;
use ncchar::io;
use ncchar::linalg::Subspace;
use ncchar::linrep::{rep_add, rep_equal};
use ncchar::pmu::p3_example;
use ncchar::quasidet::walk_series;
use ncchar::random::*;
use ncchar::series::{magnus, series_add, series_mul, words_up_to};
use ncchar::{
    algebra_closure, chi_via_qdet, qdet, rat, reconstruct, semisimple_iso_test, FreeModule, Matrix, PmuModule,
    Rational, SeriesMatrix, TruncSeries, Word,
};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn powers(s: &TruncSeries, from: usize, to: usize) -> Vec<Rational> {
    (from..=to).map(|p| s.coeff(&Word::new(vec![0; p]))).collect()
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rat(x)).collect()
}

fn module_corpus() -> Vec<FreeModule> {
    let mut rng = seeded(0xC0FFEE);
    (0..50)
        .map(|i| random_free_module(&mut rng, 1 + i % 3, i % 5, 2))
        .collect()
}

fn diagonal_example() -> Check {
    let m = FreeModule::new(2, vec![Matrix::diagonal(&ints(&[2, 3]))]).unwrap();
    let chi = m.chi_rep().expand(4);
    ensure!(powers(&chi, 0, 4) == ints(&[2, 5, 13, 35, 97]), "coefficients {:?}", powers(&chi, 0, 4));
    let geometric = |l: i64| {
        TruncSeries::from_terms(1, 4, (0..=4).map(|p| (Word::new(vec![0; p]), rat(l.pow(p as u32))))).unwrap()
    };
    ensure!(chi == series_add(&geometric(2), &geometric(3)).unwrap(), "not a sum of geometric series");
    Ok(())
}

fn rotation() -> Check {
    let rot = FreeModule::new(2, vec![Matrix::from_ints(&[[0, -1], [1, 0]])]).unwrap();
    let chi = rot.chi_rep();
    let want = TruncSeries::from_terms(
        1,
        6,
        [(0, 2), (2, -2), (4, 2), (6, -2)].map(|(p, c)| (Word::new(vec![0; p]), rat(c))),
    )
    .unwrap();
    ensure!(chi.expand(6) == want, "chi = {}", chi.expand(6));
    let dim = reconstruct(&chi).module.dim();
    ensure!(dim == 2, "reconstruction has dimension {dim}");
    Ok(())
}

fn oracle_equivalence() -> Check {
    for (i, m) in module_corpus().iter().enumerate() {
        ensure!(m.chi_rep().expand(6) == m.chi_trace_oracle(6), "module {i} (mu={}, d={})", m.mu(), m.dim());
    }
    Ok(())
}

fn absolutely_simple_reconstruction() -> Check {
    let mut rng = seeded(26);
    for i in 0..20 {
        let d = 2 + i % 2;
        let m = random_absolutely_simple(&mut rng, 2, d, 2);
        let rec = reconstruct(&m.chi_rep());
        ensure!(rec.module.dim() == d * d, "instance {i}: dimension {}", rec.module.dim());
        ensure!(
            rep_equal(&rec.module.chi_rep(), &scaled_chi(&m, d)).unwrap(),
            "instance {i}: chi of reconstruction is not d * chi"
        );
    }
    Ok(())
}

fn distinct_summands() -> Check {
    let mut rng = seeded(28);
    let shapes: [&[usize]; 6] = [&[1, 2], &[2, 2], &[2, 3], &[1, 1, 2], &[1, 2, 3], &[2, 2, 2]];
    for dims in shapes {
        let mut parts: Vec<FreeModule> = Vec::new();
        for &d in dims {
            let next = loop {
                let cand = random_absolutely_simple(&mut rng, 2, d, 2);
                if parts.iter().all(|p| !rep_equal(&p.chi_rep(), &cand.chi_rep()).unwrap()) {
                    break cand;
                }
            };
            parts.push(next);
        }
        let sum = parts[1..].iter().fold(parts[0].clone(), |acc, p| acc.direct_sum(p).unwrap());
        let rec = reconstruct(&sum.chi_rep());
        let want_dim: usize = dims.iter().map(|d| d * d).sum();
        ensure!(rec.module.dim() == want_dim, "{dims:?}: dimension {} != {want_dim}", rec.module.dim());
        let want = parts[1..]
            .iter()
            .fold(scaled_chi(&parts[0], parts[0].dim()), |acc, p| rep_add(&acc, &scaled_chi(p, p.dim())).unwrap());
        ensure!(rep_equal(&rec.module.chi_rep(), &want).unwrap(), "{dims:?}: wrong chi");
    }
    Ok(())
}

fn fliess() -> Check {
    let mut rng = seeded(6);
    for i in 0..20 {
        let (mu, d) = (1 + i % 2, 1 + i % 4);
        let (m, v, phi) = loop {
            let m = random_free_module(&mut rng, mu, d, 2);
            let v = random_vector(&mut rng, d, 2);
            let phi = random_vector(&mut rng, d, 2);
            if m.is_cyclic_vector(&v) && m.is_cyclic_covector(&phi) {
                break (m, v, phi);
            }
        };
        let s = m.fliess_rep(&v, &phi).unwrap();
        let rec = reconstruct(&s);
        ensure!(rec.module.dim() == d, "triple {i}: dimension {}", rec.module.dim());
        ensure!(rep_equal(&rec.regenerate(), &s).unwrap(), "triple {i}: regenerated series differs");
    }
    Ok(())
}

fn isomorphism_test() -> Check {
    let mut rng = seeded(29);
    for i in 0..50 {
        let d = 1 + i % 3;
        let m = if i % 2 == 0 {
            random_absolutely_simple(&mut rng, 2, d, 2)
        } else {
            let eig: Vec<Rational> = (0..d).map(|_| small_int(&mut rng, 4)).collect();
            hidden_diagonal(&mut rng, &eig, 2)
        };
        let p = random_invertible(&mut rng, d, 3);
        ensure!(semisimple_iso_test(&m, &m.conjugate(&p).unwrap()).unwrap(), "conjugate pair {i} unequal");
    }
    for i in 0..50 {
        let d = 1 + i % 3;
        let a: Vec<Rational> = (0..d).map(|_| small_int(&mut rng, 4)).collect();
        let mut b = a.clone();
        b[i % d] += rat(1 + (i % 2) as i64);
        let ma = hidden_diagonal(&mut rng, &a, 2);
        let mb = hidden_diagonal(&mut rng, &b, 2);
        ensure!(!semisimple_iso_test(&ma, &mb).unwrap(), "distinguished pair {i} compared equal");
    }
    Ok(())
}

fn walk_expansion() -> Check {
    let mut rng = seeded(41);
    for k in 0..20 {
        let (mu, size) = (1 + k % 2, 1 + k % 4);
        let b = random_strictly_proper(&mut rng, mu, size, 6, 2);
        let e_minus_b = SeriesMatrix::identity(size, mu, 6).sub(&b).unwrap();
        for i in 0..size {
            let lhs = qdet(&e_minus_b, i, i).unwrap().invert().unwrap();
            ensure!(lhs == walk_series(&b, i, 6).unwrap(), "instance {k}, index {i}");
        }
    }
    Ok(())
}

fn chi_by_quasideterminants() -> Check {
    let mut rng = seeded(42);
    for (i, m) in module_corpus().iter().enumerate() {
        let via = chi_via_qdet(m, 6).unwrap();
        ensure!(via == m.chi_trace_oracle(6), "module {i}: differs from chi");
        let p = random_invertible(&mut rng, m.dim(), 2);
        ensure!(chi_via_qdet(&m.conjugate(&p).unwrap(), 6).unwrap() == via, "module {i}: basis dependent");
    }
    Ok(())
}

fn one_letter_phi() -> Check {
    let a = PmuModule::new(Matrix::diagonal(&ints(&[2])), vec![Matrix::identity(1)]).unwrap();
    let phi = a.phi_rep().unwrap().expand(4);
    ensure!(powers(&phi, 0, 4) == ints(&[0, 1, -2, 4, -8]), "phi = {phi}");
    let mut rng = seeded(10);
    for i in 0..20 {
        let d = 1 + i % 3;
        let z = random_matrix(&mut rng, d, d, 3);
        let phi = PmuModule::new(z.clone(), vec![Matrix::identity(d)]).unwrap().phi_rep().unwrap().expand(8);
        let chi = FreeModule::new(d, vec![z]).unwrap().chi_rep().expand(7);
        ensure!(phi.epsilon() == rat(0), "instance {i}: nonzero constant term");
        for n in 0..=7 {
            let sign = if n % 2 == 0 { rat(1) } else { rat(-1) };
            ensure!(
                phi.coeff(&Word::new(vec![0; n + 1])) == sign * chi.coeff(&Word::new(vec![0; n])),
                "instance {i}: mismatch at x^{}",
                n + 1
            );
        }
    }
    Ok(())
}

fn p3_audit() -> Check {
    let a = p3_example();
    ensure!(a.validate(), "relations fail");
    ensure!(a.z().rank() == 2, "rank(z) = {}", a.z().rank());
    let image = Subspace::span(3, (0..3).map(|j| a.z().column(j)));
    for (k, u) in a.induced().unwrap().actions().iter().enumerate() {
        for v in image.basis() {
            ensure!(image.contains(&u.apply(v)), "image of z not invariant under u_{}", k + 1);
        }
    }
    let mut gens = a.pi().to_vec();
    gens.push(a.z().clone());
    let dim = algebra_closure(3, &gens).unwrap().dim();
    ensure!(dim == 9, "closure has dimension {dim}");
    Ok(())
}

fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_ncchar")
}

fn run_cli(args: &[&str]) -> Result<(i32, String), String> {
    let out = Command::new(binary()).args(args).output().map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned()))
}

/// Coefficients of `x1^0, x1^1, ...` from a "word<TAB>coeff" block.
fn parse_block(lines: &[&str], to: usize) -> Result<Vec<Rational>, String> {
    let mut coeffs = vec![rat(0); to + 1];
    for line in lines {
        let (w, c) = line.split_once('\t').ok_or(format!("bad line {line:?}"))?;
        let len = if w == "1" { 0 } else { w.split('*').count() };
        coeffs[len] = ncchar::linalg::parse_rational(c).map_err(|e| e.to_string())?;
    }
    Ok(coeffs)
}

fn trefoil() -> Check {
    let (code, out) = run_cli(&["alexander", "1,-1,1", "--order", "5"])?;
    ensure!(code == 0, "exit code {code}");
    let lines: Vec<&str> = out.lines().collect();
    let split = lines.iter().position(|l| *l == "phi").ok_or("no phi section")?;
    ensure!(lines.first() == Some(&"chi"), "no chi section");
    let chi = parse_block(&lines[1..split], 5)?;
    let phi = parse_block(&lines[split + 1..], 5)?;
    ensure!(chi == ints(&[2, 1, -1, -2, -1, 1]), "chi {chi:?}");
    ensure!(phi[1..] == ints(&[2, -1, -1, 2, -1])[..] && phi[0] == rat(0), "phi {phi:?}");
    Ok(())
}

fn write_temp(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn qdet_phi_audit() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut rng = seeded(43);
    let mut cases: Vec<PmuModule> = [-2, 0, 1, 2, 3]
        .iter()
        .map(|&l| PmuModule::new(Matrix::diagonal(&ints(&[l])), vec![Matrix::identity(1)]).unwrap())
        .collect();
    cases.push(p3_example());
    for (i, a) in cases.iter().enumerate() {
        let p = random_invertible(&mut rng, a.dim(), 2);
        let conj = a.conjugate(&p).unwrap();
        let plain = write_temp(dir.path(), &format!("a{i}.json"), &io::pmu_module_to_json(a));
        let moved = write_temp(dir.path(), &format!("b{i}.json"), &io::pmu_module_to_json(&conj));
        let (c1, r1) = run_cli(&["prop43-report", plain.to_str().unwrap(), "--order", "4"])?;
        let (c2, r2) = run_cli(&["prop43-report", moved.to_str().unwrap(), "--order", "4"])?;
        ensure!(c1 == 0 && c2 == 0, "case {i}: exit codes {c1}, {c2}");
        ensure!(r1.starts_with("word\tqdet_sum\tphi\tdifference\n"), "case {i}: no report table");
        ensure!(r1.contains("MATCH"), "case {i}: no summary line");
        ensure!(r1 == r2, "case {i}: report changes under conjugation");
    }
    Ok(())
}

fn calculus() -> Check {
    let mut rng = seeded(14);
    let order = 5;
    for k in 0..100 {
        let mu = 1 + k % 3;
        let f = random_series(&mut rng, mu, order, 0.4, 3);
        let g = random_series(&mut rng, mu, order, 0.4, 3);
        for i in 0..mu {
            let lhs = series_mul(&f, &g).unwrap().fox_derive(i).unwrap();
            let rhs = series_add(
                &series_mul(&f.fox_derive(i).unwrap(), &g).unwrap(),
                &g.fox_derive(i).unwrap().scale(&f.epsilon()),
            )
            .unwrap();
            ensure!(lhs == rhs, "Leibniz rule, instance {k}");
        }

        let s = random_series(&mut rng, mu, order, 0.5, 3);
        let p = random_polynomial(&mut rng, mu, 2, 3, 3);
        let action = s.circ(&p).unwrap();
        let p_full = TruncSeries::from_terms(mu, order, p.terms().map(|(w, c)| (w.clone(), c.clone()))).unwrap();
        for w in words_up_to(mu, order - 2) {
            let wp = TruncSeries::from_terms(mu, order, [(w.clone(), rat(1))]).unwrap();
            let pw = series_mul(&p_full, &wp).unwrap();
            ensure!(action.coeff(&w) == s.pairing(&pw).unwrap(), "(S o P, w) = (S, Pw), instance {k}");
        }
        for i in 0..mu {
            let x = TruncSeries::letter(mu, 1, i, rat(1)).unwrap();
            ensure!(s.circ(&x).unwrap() == s.fox_derive(i).unwrap(), "S o x_i, instance {k}");
        }

        let a = random_group_word(&mut rng, mu, k % 5);
        let b = random_group_word(&mut rng, mu, (k / 5) % 5);
        let joint = magnus(&a.concat(&b), mu, order).unwrap();
        let split = series_mul(&magnus(&a, mu, order).unwrap(), &magnus(&b, mu, order).unwrap()).unwrap();
        ensure!(joint == split, "Magnus multiplicativity, instance {k}");

        let h = random_augmentation_series(&mut rng, mu, order, 0.5, 3);
        for i in 0..mu {
            let lhs = h.pmu_pi(i).unwrap().pmu_z().unwrap().neg();
            ensure!(lhs == h.fox_derive(i).unwrap(), "-z pi_i = d_i, instance {k}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 14] = [
        ("one-letter diagonal module diag(2,3)", diagonal_example),
        ("rotation module and its reconstruction", rotation),
        ("realization equals trace oracle on 50 modules", oracle_equivalence),
        ("absolutely simple modules reconstruct to d copies", absolutely_simple_reconstruction),
        ("direct sums of distinct simple modules", distinct_summands),
        ("cyclic triples reconstruct the Fliess module", fliess),
        ("isomorphism test on 100 pairs", isomorphism_test),
        ("inverse quasideterminant equals walk sum", walk_expansion),
        ("chi through quasideterminants, basis free", chi_by_quasideterminants),
        ("one-letter phi and its bridge to chi", one_letter_phi),
        ("three-letter P_mu example audit", p3_audit),
        ("trefoil Alexander bridge via the CLI", trefoil),
        ("quasideterminant phi report audit", qdet_phi_audit),
        ("Fox calculus identities", calculus),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        match result {
            Ok(()) => println!("PASS criterion {:>2}: {name}", n + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name}: {why}", n + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
