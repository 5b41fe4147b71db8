//! Acceptance run: one line per criterion, nonzero exit if any fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use surreal::names::{self, GeneticEngine};
use surreal::normalform::{commensurable, much_less, omega_pow};
use surreal::{cli, parse, print, Dyadic, Name, Surreal, Universe};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn generation_counts() -> Check {
    let start = Instant::now();
    let u = Universe::build(10).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    for n in 0..=10u32 {
        let got = u.generation(n).len();
        ensure(got == 1 << n, || format!("|S_{n}| = {got}"))?;
    }
    ensure(u.len() == (1 << 11) - 1, || format!("total {}", u.len()))?;
    ensure(elapsed < Duration::from_secs(10), || {
        format!("took {elapsed:?}")
    })
}

fn first_seven() -> Check {
    let u = Universe::build(2).map_err(|e| e.to_string())?;
    let values = u.map_to_dyadic();
    let got: Vec<String> = u
        .sorted_ids()
        .iter()
        .map(|&i| values[i].to_string())
        .collect();
    ensure(got == ["-2", "-1", "-1/2", "0", "1/2", "1", "2"], || {
        format!("{got:?}")
    })
}

fn order_isomorphism() -> Check {
    let u = Universe::build(10).map_err(|e| e.to_string())?;
    let values = u.map_to_dyadic();
    for n in u.numbers() {
        let b = values[n.id()].birthday_u64();
        ensure(b == Some(n.generation() as u64), || {
            format!(
                "{} in generation {} has birthday {b:?}",
                values[n.id()],
                n.generation()
            )
        })?;
    }
    let sorted: Vec<Dyadic> = u.sorted_ids().iter().map(|&i| values[i].clone()).collect();
    ensure(sorted.windows(2).all(|w| w[0] < w[1]), || {
        "map is not strictly increasing".into()
    })?;
    let target = Dyadic::up_to_birthday(10);
    ensure(sorted == target, || {
        format!("image has {} of {} numbers", sorted.len(), target.len())
    })?;
    for (i, a) in sorted.iter().enumerate().step_by(37) {
        for (j, b) in sorted.iter().enumerate() {
            let ids = u.sorted_ids();
            ensure(u.leq(ids[i], ids[j]) == (a <= b), || {
                format!("order differs at {a}, {b}")
            })?;
        }
    }
    Ok(())
}

fn genetic_addition() -> Check {
    let all = Dyadic::up_to_birthday(5);
    ensure(all.len() == 63, || format!("{} numbers", all.len()))?;
    let mut g = GeneticEngine::new(12);
    for a in &all {
        for b in &all {
            let s = g.add(a, b).map_err(|e| e.to_string())?;
            ensure(s == a + b, || format!("{a} + {b} gave {s}"))?;
        }
    }
    let half = names::resolve(&Name::from_dyadics([d("-1"), d("0")], [d("1")]).unwrap())
        .map_err(|e| e.to_string())?;
    ensure(half == Surreal::Dyadic(d("1/2")), || {
        format!("{{-1,0|1}} = {half}")
    })?;
    let one = g.add(&d("1/2"), &d("1/2")).map_err(|e| e.to_string())?;
    ensure(one == Dyadic::one(), || format!("1/2 + 1/2 = {one}"))?;
    let e = parse("{-1,0|1} + {-1,0|1}").map_err(|e| e.to_string())?;
    let v = surreal::parser::Evaluator::genetic(GeneticEngine::new(12))
        .eval(&e)
        .map_err(|e| e.to_string())?;
    ensure(v == Surreal::one(), || format!("worked example gave {v}"))
}

fn genetic_multiplication() -> Check {
    let all = Dyadic::up_to_birthday(4);
    ensure(all.len() == 31, || format!("{} numbers", all.len()))?;
    let mut g = GeneticEngine::new(12);
    for a in &all {
        let z = g.mul(&Dyadic::zero(), a).map_err(|e| e.to_string())?;
        ensure(z.is_zero(), || format!("0 * {a} = {z}"))?;
        for b in &all {
            let p = g.mul(a, b).map_err(|e| e.to_string())?;
            ensure(p == a * b, || format!("{a} * {b} gave {p}"))?;
            let q = g.mul(a, &-b).map_err(|e| e.to_string())?;
            ensure(q == -&p, || format!("{a} * -({b}) gave {q}"))?;
        }
    }
    Ok(())
}

fn negation() -> Check {
    let mut g = GeneticEngine::new(12);
    for x in Dyadic::up_to_birthday(8) {
        let n = g.neg(&x).map_err(|e| e.to_string())?;
        ensure(n == -&x, || format!("-({x}) gave {n}"))?;
        let back = g.neg(&n).map_err(|e| e.to_string())?;
        ensure(back == x, || format!("--({x}) gave {back}"))?;
    }
    Ok(())
}

fn mediator_minimality() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let pool = Dyadic::up_to_birthday(10);
    for _ in 0..10_000 {
        let k = rng.gen_range(0..=6);
        let mut xs: Vec<Dyadic> = pool.choose_multiple(&mut rng, k).cloned().collect();
        xs.sort();
        let split = rng.gen_range(0..=xs.len());
        let name = Name::from_dyadics(xs[..split].to_vec(), xs[split..].to_vec())
            .map_err(|e| e.to_string())?;
        let v = names::resolve(&name).map_err(|e| e.to_string())?;
        let v = v
            .as_dyadic()
            .cloned()
            .ok_or_else(|| format!("{name} gave {v}"))?;
        let lo = xs[..split].last();
        let hi = xs.get(split);
        let inside = |t: &Dyadic| lo.is_none_or(|l| l < t) && hi.is_none_or(|h| t < h);
        ensure(inside(&v), || format!("{name} gave {v}, outside"))?;
        let bv = v.birthday_u64().unwrap();
        ensure(bv <= 11, || format!("{name} gave {v}"))?;
        if let Some(t) = pool
            .iter()
            .find(|t| t.birthday_u64().unwrap() < bv && inside(t))
        {
            return Err(format!("{name} gave {v} but the older {t} is inside"));
        }
    }
    Ok(())
}

fn genealogy() -> Check {
    ensure(Dyadic::zero().children() == (d("-1"), d("1")), || {
        "children(0)".into()
    })?;
    ensure(d("3").children() == (d("5/2"), d("4")), || {
        format!("children(3) = {:?}", d("3").children())
    })?;
    for x in Dyadic::up_to_birthday(10) {
        let (l, b) = (x.lineage().len() as u64, x.birthday_u64().unwrap());
        ensure(l == b, || format!("{x}: lineage {l}, birthday {b}"))?;
    }
    Ok(())
}

fn omega_laws() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    ensure(omega_pow(&Surreal::zero()) == Surreal::one(), || {
        "w^0 != 1".into()
    })?;
    for _ in 0..1000 {
        let a = Surreal::Dyadic(random_dyadic(&mut rng, 6, 200));
        let b = Surreal::Dyadic(random_dyadic(&mut rng, 6, 200));
        let lhs = &omega_pow(&a) * &omega_pow(&b);
        ensure(lhs == omega_pow(&(&a + &b)), || {
            format!("w^{a} * w^{b} = {lhs}")
        })?;
        let ml = much_less(&omega_pow(&a), &omega_pow(&b)).map_err(|e| e.to_string())?;
        ensure((a < b) == ml, || format!("{a} < {b} but much_less is {ml}"))?;
    }
    Ok(())
}

/// Positive form whose leading coefficient lies in [1/8, 7].
fn positive_form(rng: &mut ChaCha8Rng) -> Surreal {
    loop {
        let k = rng.gen_range(1..=3);
        let mut exps: Vec<Surreal> = (0..k).map(|_| random_exponent(rng)).collect();
        exps.sort();
        exps.dedup();
        let terms: Vec<_> = exps
            .into_iter()
            .map(|e| {
                let c = rat(rng.gen_range(1..=7), rng.gen_range(1..=8));
                (e, if rng.gen_bool(0.5) { c } else { -c })
            })
            .collect();
        let f = Surreal::from_terms(terms);
        if !f.is_zero() {
            return f.abs();
        }
    }
}

fn magnitude_trichotomy() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_000a);
    for _ in 0..1000 {
        let (a, b) = (positive_form(&mut rng), positive_form(&mut rng));
        let ab = much_less(&a, &b).map_err(|e| e.to_string())?;
        let ba = much_less(&b, &a).map_err(|e| e.to_string())?;
        let co = commensurable(&a, &b).map_err(|e| e.to_string())?;
        ensure([ab, ba, co].iter().filter(|t| **t).count() == 1, || {
            format!("{a}, {b}: <<{ab} >>{ba} ~{co}")
        })?;
        let probe = (1..=64).all(|n| &Surreal::integer(n) * &a < b);
        ensure(probe == ab, || {
            format!("{a} << {b} is {ab} but the probe says {probe}")
        })?;
    }
    Ok(())
}

fn field_laws() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_000b);
    for _ in 0..1000 {
        let x = random_form(&mut rng, 3);
        let y = random_form(&mut rng, 3);
        let z = random_form(&mut rng, 3);
        let ctx = || format!("x = {x}, y = {y}, z = {z}");
        ensure(&(&x + &y) + &z == &x + &(&y + &z), || {
            format!("+ assoc: {}", ctx())
        })?;
        ensure(&(&x * &y) * &z == &x * &(&y * &z), || {
            format!("* assoc: {}", ctx())
        })?;
        ensure(&x + &y == &y + &x, || format!("+ comm: {}", ctx()))?;
        ensure(&x * &y == &y * &x, || format!("* comm: {}", ctx()))?;
        ensure(&x * &(&y + &z) == &(&x * &y) + &(&x * &z), || {
            format!("distrib: {}", ctx())
        })?;
        if x <= y {
            ensure(&x + &z <= &y + &z, || format!("order: {}", ctx()))?;
        }
        if let Some(t) = x.terms().first() {
            let m = Surreal::from_terms([(t.exponent.clone(), t.coeff.clone())]);
            let inv = m.inverse().map_err(|e| e.to_string())?;
            ensure(&m * &inv == Surreal::one(), || format!("{m} * {inv}"))?;
        }
    }
    Ok(())
}

const FUZZ_ALPHABET: &[char] = &[
    '0', '1', '2', '3', '7', '9', 'w', 'ω', '+', '-', '*', '/', '^', '(', ')', '{', '}', '|', ',',
    ' ',
];

fn parser_round_trip() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_000c);
    for i in 0..10_000 {
        let v = match i % 3 {
            0 => Surreal::Dyadic(random_dyadic(&mut rng, 20, 1 << 20)),
            1 => Surreal::from_rational(random_coeff(&mut rng, 1000)),
            _ => random_form(&mut rng, 3),
        };
        let text = print(&v);
        let e = parse(&text).map_err(|e| format!("{text:?}: {e}"))?;
        let back = surreal::eval(&e).map_err(|e| format!("{text:?}: {e}"))?;
        ensure(back == v, || format!("{text:?} read back as {back}"))?;
    }
    let previous = panic::take_hook();
    panic::set_hook(Box::new(|_| {}));
    let mut outcome = Ok(());
    for _ in 0..100_000 {
        let len = rng.gen_range(0..=64);
        let mut s = String::new();
        while s.len() < len {
            let c = if rng.gen_ratio(1, 8) {
                char::from_u32(rng.gen_range(0..0x3000)).unwrap_or('?')
            } else {
                *FUZZ_ALPHABET.choose(&mut rng).unwrap()
            };
            if s.len() + c.len_utf8() > 64 {
                break;
            }
            s.push(c);
        }
        let r = panic::catch_unwind(AssertUnwindSafe(|| {
            if let Ok(e) = parse(&s) {
                let _ = surreal::eval(&e);
            }
        }));
        if r.is_err() {
            outcome = Err(format!("panic on {s:?}"));
            break;
        }
    }
    panic::set_hook(previous);
    outcome
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("surreal").chain(args.iter().copied());
    let code = cli::run(argv, &mut std::io::empty(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

fn cli_goldens() -> Check {
    let cases: [(&[&str], &str); 3] = [
        (&["eval", "{-1,0|1} + {-1,0|1}"], "1\n"),
        (&["children", "3"], "5/2  4\n"),
        (
            &["gens", "2"],
            "S0 1: 0\nS1 2: -1 1\nS2 4: -2 -1/2 1/2 2\nT3 7: -2 -1 -1/2 0 1/2 1 2\n",
        ),
    ];
    for (args, want) in cases {
        let (code, got) = run_cli(args);
        ensure(code == 0 && got == want, || {
            format!("{args:?} gave {code} {got:?}")
        })?;
    }
    let (code, dot) = run_cli(&["tree", "5"]);
    let nodes = dot.matches("[label=").count();
    let edges = dot.matches(" -> ").count();
    ensure(code == 0 && nodes == 63 && edges == 62, || {
        format!("tree 5: {nodes} nodes, {edges} edges")
    })
}

fn main() {
    let criteria: [Criterion; 13] = [
        ("generation counts", generation_counts),
        ("first-seven ordering", first_seven),
        ("order isomorphism", order_isomorphism),
        ("genetic addition", genetic_addition),
        ("genetic multiplication", genetic_multiplication),
        ("negation involution", negation),
        ("mediator minimality", mediator_minimality),
        ("genealogy facts", genealogy),
        ("omega-power laws", omega_laws),
        ("magnitude trichotomy", magnitude_trichotomy),
        ("field-fragment laws", field_laws),
        ("parser round-trip", parser_round_trip),
        ("cli goldens", cli_goldens),
    ];
    let mut failed = 0;
    for (label, check) in criteria {
        let start = Instant::now();
        let result = panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let ms = start.elapsed().as_millis();
        match result {
            Ok(()) => println!("PASS  {label} ({ms} ms)"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {label} ({ms} ms): {why}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
