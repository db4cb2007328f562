//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use besselzeta::verify_parallel;
use besselzeta_core::algebra::{rf_equal, set_term_limit, Rational, RationalFunction};
use besselzeta_core::cosets::{index_bruteforce, index_formula};
use besselzeta_core::hilbert::{
    default_precision, hilbert_symbol, legendre, relevant_primes, solvable_oracle, Place,
};
use besselzeta_core::lfactor::{local_lfactor, zeta_normalizer};
use besselzeta_core::sugano::{
    bessel_coeff, bessel_coeff_iterated, bessel_table, CosetRep, PlaceCase, PlaceData, SatakeData,
};
use besselzeta_core::verifier::{
    closed_form_inert, closed_form_split, draw_samples, eta_theta, Mode, VerifyConfig,
    VerifyReport, CLOSED_FORM_FACTORS,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, Box<dyn FnOnce() -> Outcome>);

const TERM_LIMIT: usize = 2_000_000;

fn config(case: PlaceCase, mode: Mode, samples: usize, seed: u64) -> VerifyConfig {
    let mut cfg = VerifyConfig::new(case, mode);
    cfg.samples = samples;
    cfg.seed = seed;
    cfg
}

fn require_pass(label: &str, r: &VerifyReport) -> Result<(), String> {
    match r.failures().next() {
        None => Ok(()),
        Some(c) => Err(format!(
            "{label}: {} failed ({:?} {:?})",
            c.name, c.first_mismatch, c.error
        )),
    }
}

/// Runs `body` under a wall-clock budget and checks each phase's own limit.
fn timed(limit: Duration, body: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let start = Instant::now();
    let out = body();
    let took = start.elapsed();
    match out {
        Ok(_) if took > limit => (Err(format!("took {took:.2?}, limit {limit:?}")), took),
        other => (other, took),
    }
}

fn phase(
    limit: Duration,
    label: &str,
    f: impl FnOnce() -> Result<(), String>,
) -> Result<String, String> {
    let start = Instant::now();
    f()?;
    let took = start.elapsed();
    if took > limit {
        return Err(format!("{label} took {took:.2?}, limit {limit:?}"));
    }
    Ok(format!("{label} {took:.2?}"))
}

fn c1_inert_identity() -> Outcome {
    let a = phase(Duration::from_secs(10), "univariate x20", || {
        let r = verify_parallel(&config(PlaceCase::Inert, Mode::Univariate, 20, 0))
            .map_err(|e| e.to_string())?;
        require_pass("univariate", &r)
    })?;
    let b = phase(Duration::from_secs(300), "symbolic", || {
        set_term_limit(TERM_LIMIT);
        let r = verify_parallel(&config(PlaceCase::Inert, Mode::Symbolic, 1, 0))
            .map_err(|e| e.to_string())?;
        require_pass("symbolic", &r)
    })?;
    Ok(format!("{a}; {b}"))
}

fn normalization(case: PlaceCase) -> Outcome {
    let s = SatakeData::symbolic();
    let (p, closed, twist) = match case {
        PlaceCase::Inert => (
            PlaceData::symbolic_inert(),
            closed_form_inert as fn(_, _) -> _,
            -1,
        ),
        PlaceCase::Split => (
            PlaceData::symbolic_split(),
            closed_form_split as fn(_, _) -> _,
            1,
        ),
    };
    let run = || -> besselzeta_core::Result<bool> {
        let lhs = zeta_normalizer(&p)?.mul(&closed(&s, &p)?)?;
        rf_equal(&lhs, &local_lfactor(&s, twist)?)
    };
    match run() {
        Ok(true) => Ok("symbolic".into()),
        Ok(false) => Err("normalized closed form differs from the L-factor".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn c3_split_identity() -> Outcome {
    let a = phase(Duration::from_secs(10), "univariate x20", || {
        let cfg = config(PlaceCase::Split, Mode::Univariate, 20, 0);
        let samples = draw_samples(&cfg).map_err(|e| e.to_string())?;
        for s in &samples {
            let sw = &(&s.a * &s.b) * &s.c;
            let u = s.u.clone().ok_or("split sample without U")?;
            if &u * &u == &sw * &sw {
                return Err("degenerate sample drawn".into());
            }
        }
        let r = verify_parallel(&cfg).map_err(|e| e.to_string())?;
        require_pass("univariate", &r)
    })?;
    let b = phase(Duration::from_secs(300), "symbolic", || {
        set_term_limit(TERM_LIMIT);
        let r = verify_parallel(&config(PlaceCase::Split, Mode::Symbolic, 1, 0))
            .map_err(|e| e.to_string())?;
        require_pass("symbolic", &r)
    })?;
    Ok(format!("{a}; {b}"))
}

fn c5_eta_theta() -> Outcome {
    let et = eta_theta(&SatakeData::symbolic(), &PlaceData::symbolic_split())
        .map_err(|e| e.to_string())?;
    let eta = et.eta1.add(&et.eta2).map_err(|e| e.to_string())?;
    let theta = et.theta1.add(&et.theta2).map_err(|e| e.to_string())?;
    if !rf_equal(&eta, &RationalFunction::one()).map_err(|e| e.to_string())? {
        return Err(format!("eta1 + eta2 = {eta}"));
    }
    if !theta.is_zero()
        && !rf_equal(&theta, &RationalFunction::zero()).map_err(|e| e.to_string())?
    {
        return Err(format!("theta1 + theta2 = {theta}"));
    }
    Ok("symbolic in U and omega".into())
}

fn series(case: PlaceCase) -> Outcome {
    let mut cfg = config(case, Mode::Series, 10, 0);
    cfg.order = 10;
    let r = verify_parallel(&cfg).map_err(|e| e.to_string())?;
    require_pass("series", &r)?;
    let tried: Vec<String> = r
        .conventions
        .iter()
        .map(|(c, ok)| format!("{c}={}", if *ok { "match" } else { "differ" }))
        .collect();
    match (case, r.convention) {
        (PlaceCase::Split, None) => Err("no convention recorded".into()),
        (PlaceCase::Split, Some(c)) => Ok(format!(
            "10 samples through T^10, convention {c} [{}]",
            tried.join(", ")
        )),
        (PlaceCase::Inert, _) => Ok("10 samples through T^10".into()),
    }
}

fn c8_bessel() -> Outcome {
    let mut n = 0;
    for case in [PlaceCase::Inert, PlaceCase::Split] {
        for sample in
            draw_samples(&config(case, Mode::Univariate, 20, 0)).map_err(|e| e.to_string())?
        {
            let (s, p) = sample.data(case).map_err(|e| e.to_string())?;
            let c00 = bessel_coeff(&s, &p, CosetRep { ell: 0, m: 0 }).map_err(|e| e.to_string())?;
            if !c00.is_one() {
                return Err(format!("phi(h(0, 0)) = {c00} at {sample:?}"));
            }
            let table = bessel_table(&s, &p, 4, 4).map_err(|e| e.to_string())?;
            for ell in 0..=4 {
                for m in 0..=4 - ell {
                    let it = bessel_coeff_iterated(&s, &p, CosetRep { ell, m })
                        .map_err(|e| e.to_string())?;
                    if !rf_equal(table.coeff(m, ell), &it).map_err(|e| e.to_string())? {
                        return Err(format!(
                            "routes differ at (l, m) = ({ell}, {m}) for {sample:?}"
                        ));
                    }
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} coefficients, two routes"))
}

fn rand_rational(rng: &mut ChaCha8Rng) -> Rational {
    let n: i64 = rng.gen_range(1..=200);
    let d: i64 = rng.gen_range(1..=50);
    Rational::new(if rng.gen() { n } else { -n }, d)
}

fn c9_hilbert() -> Outcome {
    let primes = [2u64, 3, 5, 7];
    let mut agree = 0usize;
    for p in primes {
        for a in -50i64..=50 {
            for b in -50i64..=50 {
                if a == 0 || b == 0 {
                    continue;
                }
                let (a, b) = (Rational::from_integer(a), Rational::from_integer(b));
                let k = default_precision(&a, &b, p).map_err(|e| e.to_string())?;
                let solvable = solvable_oracle(&a, &b, p, k).map_err(|e| e.to_string())?;
                let h = hilbert_symbol(&a, &b, Place::Finite(p)).map_err(|e| e.to_string())?;
                if (h == 1) != solvable {
                    return Err(format!("({a}, {b})_{p} = {h}, oracle says {solvable}"));
                }
                agree += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let places = [
        Place::Real,
        Place::Finite(2),
        Place::Finite(3),
        Place::Finite(5),
        Place::Finite(7),
        Place::Finite(11),
    ];
    let hs = |a: &Rational, b: &Rational, v| hilbert_symbol(a, b, v).map_err(|e| e.to_string());
    for _ in 0..200 {
        let (a, a2, b) = (
            rand_rational(&mut rng),
            rand_rational(&mut rng),
            rand_rational(&mut rng),
        );
        let v = places[rng.gen_range(0..places.len())];
        if hs(&(&a * &a2), &b, v)? != hs(&a, &b, v)? * hs(&a2, &b, v)? {
            return Err(format!(
                "bimultiplicativity fails for {a}, {a2}, {b} at {v}"
            ));
        }
        if hs(&a, &b, v)? != hs(&b, &a, v)? {
            return Err(format!("symmetry fails for {a}, {b} at {v}"));
        }
    }
    for _ in 0..100 {
        let (a, b) = (rand_rational(&mut rng), rand_rational(&mut rng));
        let mut prod = hs(&a, &b, Place::Real)?;
        for p in relevant_primes(&a, &b) {
            prod *= hs(&a, &b, Place::Finite(p))?;
        }
        if prod != 1 {
            return Err(format!("reciprocity fails for {a}, {b}"));
        }
    }
    Ok(format!(
        "{agree}/{agree} oracle agreements; 200 triples; 100 reciprocity pairs"
    ))
}

fn c10_coset_index() -> Outcome {
    let mut n = 0;
    for p in [3u64, 5, 7] {
        for rho in 1..p as i64 {
            let e = legendre(&rho.into(), p);
            for m in 1..=2u32 {
                let brute = index_bruteforce(p, rho, m).map_err(|e| e.to_string())?;
                let want = p.pow(m - 1) * if e < 0 { p + 1 } else { p - 1 };
                if brute != want || index_formula(p, e, m) != want {
                    return Err(format!("p = {p}, rho = {rho}, m = {m}: {brute} vs {want}"));
                }
                n += 1;
            }
        }
    }
    Ok(format!("{n} (p, rho, m) triples"))
}

fn c11_mutation_guard() -> Outcome {
    let mut n = 0;
    for case in [PlaceCase::Inert, PlaceCase::Split] {
        for mode in [Mode::Univariate, Mode::Symbolic, Mode::Series] {
            for f in 0..CLOSED_FORM_FACTORS {
                let mut cfg = config(case, mode, 5, 0);
                cfg.tamper = Some(f);
                let r = verify_parallel(&cfg).map_err(|e| e.to_string())?;
                if r.all_pass() {
                    return Err(format!(
                        "flip of factor {f} undetected ({}, {mode})",
                        case.name()
                    ));
                }
                let first = r
                    .failures()
                    .filter_map(|c| c.first_mismatch.as_ref().map(|m| m.t_power))
                    .min()
                    .ok_or_else(|| format!("factor {f}: failure without a located mismatch"))?;
                if first > 2 {
                    return Err(format!(
                        "factor {f} ({}, {mode}): first mismatch at T^{first}",
                        case.name()
                    ));
                }
                n += 1;
            }
        }
    }
    Ok(format!("{n} tampered runs, all caught by T^2"))
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria: Vec<Criterion> = vec![
        ("1 inert identity", secs(310), Box::new(c1_inert_identity)),
        (
            "2 inert normalization",
            secs(1),
            Box::new(|| normalization(PlaceCase::Inert)),
        ),
        ("3 split identity", secs(310), Box::new(c3_split_identity)),
        (
            "4 split normalization",
            secs(1),
            Box::new(|| normalization(PlaceCase::Split)),
        ),
        ("5 eta/theta identities", secs(1), Box::new(c5_eta_theta)),
        (
            "6 series oracle, inert",
            secs(60),
            Box::new(|| series(PlaceCase::Inert)),
        ),
        (
            "7 series oracle, split",
            secs(60),
            Box::new(|| series(PlaceCase::Split)),
        ),
        ("8 Bessel layer", secs(10), Box::new(c8_bessel)),
        ("9 Hilbert layer", secs(60), Box::new(c9_hilbert)),
        ("10 coset index", secs(30), Box::new(c10_coset_index)),
        ("11 mutation guard", secs(120), Box::new(c11_mutation_guard)),
    ];
    let mut failed = 0;
    for (name, limit, body) in criteria {
        let (out, took) = timed(limit, body);
        match out {
            Ok(detail) => println!("PASS  criterion {name} ({took:.2?}): {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name} ({took:.2?}): {why}");
            }
        }
    }
    println!("{} of 11 criteria passed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
