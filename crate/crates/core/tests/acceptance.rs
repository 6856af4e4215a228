//! The ten acceptance criteria, one pass/fail line each. Runs without the
//! libtest harness so the lines are always printed.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use affmult::affine::{
    affine_multiplet, casimir_scalar, entry_casimir, spin_weights, spin_weights_full, truncated_char, verify_hwk,
    AffinePairContext, AffineRoot, AffineSystem, AffineWeight,
};
use affmult::asdim::{asdim_irrep, signed_asdim_sum};
use affmult::fin_multiplets::{
    dominant_weights_up_to_height, minimal_coset_reps, multiplet, signed_dim_sum, signed_qdim_sum, verify_gkrs,
};
use affmult::pairs::{enumerate_pairs, Pair};
use affmult::rootsys::RootSystem;
use affmult::scalar::{format_rational, q, ExactScalar};
use affmult::twisted::{self, AutType};
use affmult::Weight;

type Outcome = Result<String, String>;

const RANK_LE_4: [&str; 13] = [
    "A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "F4", "G2",
];

fn rs(label: &str) -> RootSystem {
    RootSystem::from_label(label, Default::default()).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn proper_pairs(rs: &RootSystem) -> Vec<Pair> {
    enumerate_pairs(rs).into_iter().filter(|p| !p.is_improper()).collect()
}

fn c1_gkrs() -> Outcome {
    let mut cases: Vec<(Pair, Weight)> = Vec::new();
    let a1 = rs("A1");
    for h in 0..=4 {
        cases.push((Pair::torus(&a1), Weight::from_ints(&[h])));
    }
    let g2 = rs("G2");
    let a2 = Pair::borel_de_siebenthal(&g2, &[1]).unwrap();
    ensure(a2.label() == "G2 > A2", || format!("step 1 of G2 gave {}", a2.label()))?;
    for w in [[0, 0], [1, 0], [0, 1]] {
        cases.push((a2.clone(), Weight::from_ints(&w)));
    }
    let f4 = rs("F4");
    let b4 = Pair::borel_de_siebenthal(&f4, &[4]).unwrap();
    ensure(b4.label() == "F4 > B4", || format!("step 4 of F4 gave {}", b4.label()))?;
    cases.push((b4, Weight::zero(4)));
    for (p, w) in &cases {
        let r = verify_gkrs(p, w).map_err(|e| format!("{p} at {w}: {e}"))?;
        ensure(r.holds, || format!("{p} at {w}: {} weights differ", r.diff.len()))?;
    }
    Ok(format!("{} cases", cases.len()))
}

fn c2_signed_sums() -> Outcome {
    let mut n = 0usize;
    for label in RANK_LE_4 {
        let rs = rs(label);
        let weights = dominant_weights_up_to_height(rs.rank(), 3);
        for p in proper_pairs(&rs) {
            let r = p.choose_r_vee().map_err(|e| format!("{p}: {e}"))?;
            for w in &weights {
                let m = multiplet(&p, w).map_err(|e| format!("{p} at {w}: {e}"))?;
                let d = signed_dim_sum(&m).map_err(|e| e.to_string())?;
                ensure(d.is_zero(), || format!("{p} at {w}: signed dimension sum {d}"))?;
                let s = signed_qdim_sum(&m, &r).map_err(|e| e.to_string())?;
                ensure(s.is_zero(), || format!("{p} at {w}: signed q-dimension sum {s}"))?;
                n += 1;
            }
        }
    }
    // the so(9) ⊂ F4 triplet
    let f4 = rs("F4");
    let b4 = Pair::borel_de_siebenthal(&f4, &[4]).unwrap();
    let m = multiplet(&b4, &Weight::zero(4)).unwrap();
    ensure(m.len() == 3, || format!("F4 > B4 multiplet has {} members", m.len()))?;
    // 44 − 128 + 84 = 0
    let mut dims: Vec<(BigInt, i64)> = m.entries().iter().map(|e| (e.dim.clone(), e.sign)).collect();
    dims.sort();
    let want = [(BigInt::from(44), 1), (BigInt::from(84), 1), (BigInt::from(128), -1)];
    ensure(dims == want, || format!("F4 > B4 triplet {dims:?}"))?;
    Ok(format!("{n} (pair, weight) cases; F4 > B4 triplet 44 - 128 + 84"))
}

fn c3_vsf() -> Outcome {
    let mut n = 0usize;
    for label in RANK_LE_4 {
        let rs = rs(label);
        // classical strange formula: ||ρ||²/(2g) = dim g/24
        let lhs = rs.norm2(rs.rho()) / (q(2) * rs.dual_coxeter());
        let rhs = ExactScalar::new(BigInt::from(rs.dim()), BigInt::from(24));
        ensure(lhs == rhs, || {
            format!(
                "{label}: ||ρ||²/2g = {} but dim/24 = {}",
                format_rational(&lhs),
                format_rational(&rhs)
            )
        })?;
        for aut in AutType::all_up_to(&rs, 6) {
            let res = twisted::verify_vsf(&rs, &aut);
            ensure(res.is_zero(), || {
                format!("{label} {aut}: residual {}", format_rational(&res))
            })?;
            n += 1;
        }
    }
    Ok(format!("{n} (algebra, σ) cases"))
}

// [p, p] ⊂ a at the level of roots: a sum of two p-roots that is a root lies in a.
fn symmetric_by_roots(p: &Pair) -> bool {
    let rs = p.ambient();
    let a: HashSet<&Weight> = p.sub_roots().iter().collect();
    for x in p.p_roots() {
        for y in p.p_roots() {
            let s = x + y;
            if rs.is_root(&s) && !a.contains(&s) {
                return false;
            }
        }
    }
    true
}

fn c4_masterrho() -> Outcome {
    let mut n = 0usize;
    let mut sym = 0usize;
    for label in RANK_LE_4 {
        let rs = rs(label);
        let auts = AutType::all_up_to(&rs, 4);
        for p in enumerate_pairs(&rs) {
            for aut in &auts {
                let res = twisted::verify_masterrho(&p, aut);
                ensure(res.is_zero(), || {
                    format!("{p} {aut}: residual {}", format_rational(&res))
                })?;
                n += 1;
            }
            let by_roots = symmetric_by_roots(&p);
            ensure(p.is_symmetric() == by_roots, || format!("{p}: symmetry tests disagree"))?;
            let c = twisted::central_charge(&p, &q(0)).map_err(|e| e.to_string())?;
            ensure(c.is_zero() == by_roots, || {
                format!("{p}: C(0) = {} but symmetric = {by_roots}", format_rational(&c))
            })?;
            sym += by_roots as usize;
        }
    }
    Ok(format!("{n} (pair, σ) cases; {sym} symmetric pairs with C(0) = 0"))
}

fn c5_rhorho() -> Outcome {
    let mut n = 0usize;
    for label in RANK_LE_4 {
        let rs = rs(label);
        for aut in AutType::all_up_to(&rs, 6) {
            let sys = AffineSystem::new(&rs, &aut).map_err(|e| e.to_string())?;
            for (i, b) in sys.simple_roots().iter().enumerate() {
                let w = b.weight();
                let v = q(2) * sys.form(sys.rho_hat(), &w) / sys.norm2(&w);
                ensure(v == q(1), || format!("{label} {aut} β{i}: {}", format_rational(&v)))?;
                n += 1;
            }
            let res = twisted::rho_alpha_residuals(&rs, &aut);
            ensure(res.iter().all(Zero::is_zero), || {
                format!("{label} {aut}: residuals {res:?}")
            })?;
        }
    }
    Ok(format!("{n} simple roots"))
}

fn c6_affine_multiplets() -> Outcome {
    let a1 = rs("A1");
    let g2 = rs("G2");
    let cases = [
        (Pair::torus(&a1), AutType::identity(&a1)),
        (Pair::borel_de_siebenthal(&g2, &[1]).unwrap(), AutType::identity(&g2)),
    ];
    let mut sizes = Vec::new();
    for (p, aut) in &cases {
        let ctx = AffinePairContext::new(p, aut).map_err(|e| e.to_string())?;
        let sys = ctx.system();
        let lam = AffineWeight::lambda0(sys.rank());
        let m = affine_multiplet(&ctx, &lam, 6).map_err(|e| format!("{p}: {e}"))?;
        let norm = sys.norm2(&(&lam + sys.rho_hat()));
        let cas = casimir_scalar(&ctx, &lam);
        for e in &m.entries {
            ensure(ctx.is_a_dominant_integral(&e.mu), || {
                format!("{p}: μ = {} not dominant", e.mu)
            })?;
            ensure(sys.norm2(&e.top) == norm, || format!("{p}: norm of {} differs", e.top))?;
            // the Casimir on U(μ) computed from μ alone
            let c = entry_casimir(&ctx, &e.mu);
            ensure(c == cas, || {
                format!("{p}: Casimir {} vs {}", format_rational(&c), format_rational(&cas))
            })?;
        }
        sizes.push(format!("{p}: {} members", m.entries.len()));
    }
    Ok(sizes.join(", "))
}

fn partitions(n: usize) -> BigInt {
    let mut p = vec![BigInt::zero(); n + 1];
    p[0] = BigInt::one();
    for part in 1..=n {
        for k in part..=n {
            let add = p[k - part].clone();
            p[k] += add;
        }
    }
    p[n].clone()
}

fn c7_hwk() -> Outcome {
    let a1 = rs("A1");
    let g2 = rs("G2");
    let cases = [
        (Pair::torus(&a1), AutType::identity(&a1), q(2)),
        (
            Pair::borel_de_siebenthal(&g2, &[1]).unwrap(),
            AutType::identity(&g2),
            q(1),
        ),
    ];
    let mut info = Vec::new();
    for (p, aut, depth) in &cases {
        let ctx = AffinePairContext::new(p, aut).map_err(|e| e.to_string())?;
        let lam = AffineWeight::lambda0(ctx.system().rank());
        let r = verify_hwk(&ctx, &lam, depth, 60).map_err(|e| format!("{p}: {e}"))?;
        ensure(r.holds, || format!("{p}: {} weights differ", r.diff.len()))?;
        info.push(format!("{p} depth {}", format_rational(depth)));
    }
    let sys = AffineSystem::new(&a1, &AutType::identity(&a1)).unwrap();
    let ch = truncated_char(&sys, &AffineWeight::lambda0(1), &q(2)).map_err(|e| e.to_string())?;
    let d = AffineWeight::delta_root(1);
    for n in 0..=2 {
        let w = AffineWeight::lambda0(1).add_scaled(&q(-(n as i64)), &d);
        ensure(ch.get(&w) == partitions(n), || {
            format!("mult of Λ0 - {n}δ is {}", ch.get(&w))
        })?;
    }
    Ok(format!("{}; p(0..2) = 1, 1, 2", info.join(", ")))
}

// All sums Σ n(α) α with 0 ≤ n(α) ≤ mult α and δ-depth at most `depth`.
fn s_set(modes: &[AffineRoot], rank: usize, depth: &ExactScalar) -> BTreeSet<AffineWeight> {
    let mut out = BTreeSet::from([AffineWeight::zero(rank)]);
    for m in modes {
        for _ in 0..m.mult() {
            let w = m.weight();
            let next: Vec<AffineWeight> = out.iter().map(|s| s + &w).filter(|s| s.delta() <= depth).collect();
            out.extend(next);
        }
    }
    out
}

fn c8_spin() -> Outcome {
    let a1 = rs("A1");
    let sys = AffineSystem::new(&a1, &AutType::identity(&a1)).unwrap();
    let ch = spin_weights_full(&sys, &q(0));
    let rho = sys.rho_hat().clone();
    let alpha = AffineWeight::new(Weight::from_ints(&[2]), q(0), q(0));
    let want: BTreeMap<AffineWeight, BigInt> =
        BTreeMap::from([(rho.clone(), BigInt::from(2)), (&rho - &alpha, BigInt::from(2))]);
    let got: BTreeMap<AffineWeight, BigInt> = ch.iter().map(|(w, c)| (w.clone(), c.clone())).collect();
    ensure(got == want, || format!("sl2 depth-0 spin weights {got:?}"))?;

    let depth = q(1);
    let mut n = 0usize;
    for label in ["A1", "A2", "B2", "G2"] {
        let rs = rs(label);
        for aut in AutType::all_up_to(&rs, 3) {
            let sys = AffineSystem::new(&rs, &aut).unwrap();
            let all: Vec<AffineRoot> = sys.positive_roots_to_depth(&depth);
            let s_full = s_set(&all, rs.rank(), &depth);
            for (w, _) in spin_weights_full(&sys, &depth).iter() {
                ensure(s_full.contains(&(sys.rho_hat() - w)), || {
                    format!("{label} {aut}: {w} outside ρ̂ - S")
                })?;
            }
            for p in enumerate_pairs(&rs) {
                let ctx = AffinePairContext::new(&p, &aut).unwrap();
                let modes: Vec<AffineRoot> = all
                    .iter()
                    .filter(|r| r.is_real() && p.p_roots().contains(r.finite()))
                    .cloned()
                    .collect();
                let s = s_set(&modes, rs.rank(), &depth);
                let ch = spin_weights(&ctx, &depth);
                for (w, _) in ch.iter() {
                    ensure(s.contains(&(ctx.rho_hat_sigma() - w)), || {
                        format!("{p} {aut}: {w} outside ρ̂_σ - S")
                    })?;
                }
                let zero_modes = modes.iter().filter(|m| m.s().is_zero()).count();
                let total0: BigInt = ch.stratum(&q(0)).values().sum();
                ensure(total0 == BigInt::one() << zero_modes, || {
                    format!("{p} {aut}: depth-0 dimension {total0}, expected 2^{zero_modes}")
                })?;
                n += 1;
            }
        }
    }
    Ok(format!(
        "sl2 full spin {{ρ̂: 2, ρ̂-α: 2}}; {n} (pair, σ) configurations in ρ̂_σ - S"
    ))
}

fn c9_asdim() -> Outcome {
    let g2 = rs("G2");
    let c2 = rs("C2");
    let cases = [
        (g2.clone(), Pair::borel_de_siebenthal(&g2, &[2]).unwrap()),
        (c2.clone(), Pair::borel_de_siebenthal(&c2, &[1]).unwrap()),
    ];
    let mut info = Vec::new();
    for (rs, p) in &cases {
        let ranks: Vec<usize> = p.factors().iter().map(|f| f.rank()).collect();
        ensure(ranks == [1, 1] && p.is_semisimple(), || format!("{p} is not A1 x A1"))?;
        let ctx = AffinePairContext::new(p, &AutType::identity(rs)).unwrap();
        let lam = AffineWeight::lambda0(rs.rank());
        let r256 = signed_asdim_sum(&ctx, &lam, 40, 256).map_err(|e| format!("{p}: {e}"))?;
        let r512 = signed_asdim_sum(&ctx, &lam, 40, 512).map_err(|e| format!("{p}: {e}"))?;
        ensure(r256.log10_abs_sum() < -60.0, || {
            format!("{p}: log10 |sum| = {}", r256.log10_abs_sum())
        })?;
        ensure(r256.within_bound() && r512.within_bound(), || {
            format!("{p}: log2 ratios {} and {}", r256.log2_ratio(), r512.log2_ratio())
        })?;
        let improved = r512.sum.is_zero() || r512.log2_ratio() < r256.log2_ratio();
        ensure(improved, || {
            format!(
                "{p}: no improvement under doubling ({} vs {})",
                r256.log2_ratio(),
                r512.log2_ratio()
            )
        })?;
        info.push(format!(
            "{p}: log2 ratio {} at 256, {} at 512",
            r256.log2_ratio(),
            r512.log2_ratio()
        ));
    }
    let a1 = rs("A1");
    let t = Pair::torus(&a1);
    let one = asdim_irrep(&a1, &t.factors()[0], &Weight::from_ints(&[3]), &q(2), 256).map_err(|e| e.to_string())?;
    ensure(one == astro_float::BigFloat::from_i64(1, 256), || {
        "torus factor asdim is not 1".into()
    })?;
    Ok(info.join("; "))
}

// w ∈ W′ iff w⁻¹ maps every positive a-root to a positive root.
fn brute_force_reps(p: &Pair, all: &[affmult::rootsys::WeylWord]) -> BTreeSet<Weight> {
    let rs = p.ambient();
    all.iter()
        .filter(|w| {
            let inv = w.inverse();
            p.sub_positive().iter().all(|a| rs.is_positive(&inv.apply(rs, a)))
        })
        .map(|w| w.apply(rs, rs.rho()))
        .collect()
}

fn c10_oracles() -> Outcome {
    let mut n = 0usize;
    for label in RANK_LE_4.iter().copied().chain(["A5"]) {
        let rs = rs(label);
        let Some(all) = rs.weyl_elements(1152) else {
            return Err(format!("{label}: |W| above 1152"));
        };
        for p in enumerate_pairs(&rs) {
            let fast: BTreeSet<Weight> = minimal_coset_reps(&p).iter().map(|w| w.apply(&rs, rs.rho())).collect();
            let slow = brute_force_reps(&p, &all);
            ensure(fast == slow, || {
                format!("{p}: {} BFS reps vs {} by filtering", fast.len(), slow.len())
            })?;
            n += 1;
        }
    }
    // Frenkel-Kac: Λ0 + jα - (j² + n)δ has multiplicity p(n), nothing else occurs
    let a1 = rs("A1");
    let sys = AffineSystem::new(&a1, &AutType::identity(&a1)).unwrap();
    let lam = AffineWeight::lambda0(1);
    let depth = 2i64;
    let ch = truncated_char(&sys, &lam, &q(depth)).map_err(|e| e.to_string())?;
    let mut want: BTreeMap<AffineWeight, BigInt> = BTreeMap::new();
    for j in -2i64..=2 {
        for k in 0..=depth {
            let d = j * j + k;
            if d > depth {
                continue;
            }
            let w = AffineWeight::new(Weight::from_ints(&[2 * j]), q(1), q(-d));
            want.insert(w, partitions(k as usize));
        }
    }
    let got: BTreeMap<AffineWeight, BigInt> = ch.iter().map(|(w, c)| (w.clone(), c.clone())).collect();
    ensure(got == want, || format!("sl2 basic module differs: {got:?}"))?;
    Ok(format!(
        "{n} finite pairs; sl2 basic module to depth 2 ({} weights)",
        want.len()
    ))
}

type Criterion = (&'static str, fn() -> Outcome, u64);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("GKRS multiplets", c1_gkrs, 60),
        ("signed dimension and q-dimension sums", c2_signed_sums, 300),
        ("very strange formula", c3_vsf, 60),
        ("generalized strange identity and central charge", c4_masterrho, 120),
        ("rho-hat pairing with simple roots", c5_rhorho, 10),
        ("affine multiplets", c6_affine_multiplets, 120),
        ("homogeneous Weyl-Kac identity", c7_hwk, 300),
        ("spin-module weights", c8_spin, 10),
        ("asymptotic-dimension signed sum", c9_asdim, 120),
        ("oracle equivalence", c10_oracles, 300),
    ];
    let mut failed = 0;
    for (i, (name, f, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = f();
        let t = start.elapsed();
        let out = match out {
            Ok(msg) if t > Duration::from_secs(*budget) => Err(format!("over the {budget} s budget; {msg}")),
            other => other,
        };
        match out {
            Ok(msg) => println!("criterion {:>2} PASS  {name} ({:.2} s): {msg}", i + 1, t.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({:.2} s): {msg}", i + 1, t.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        println!("{failed} of 10 criteria failed");
        ExitCode::FAILURE
    } else {
        println!("all 10 criteria passed");
        ExitCode::SUCCESS
    }
}
