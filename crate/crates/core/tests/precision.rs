use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stirling_core::exact::{int, rat, Poly};
use stirling_core::precision::{
    const_enclosure, eval_log_bound, factorial, strict_compare, Constant, Interval,
};
use stirling_core::{Direction, RatFunc, Rat};

#[derive(Debug)]
enum Node {
    Leaf(Rat),
    Add(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Ln(Box<Node>),
    Exp(Box<Node>),
    Sqrt(Box<Node>),
}

fn random_node(rng: &mut ChaCha8Rng, depth: u32) -> Node {
    if depth == 0 || rng.gen_bool(0.25) {
        let num = rng.gen_range(1..400);
        let den = rng.gen_range(1..150);
        return Node::Leaf(rat(num, den));
    }
    let op = rng.gen_range(0..5);
    let mut child = || Box::new(random_node(rng, depth - 1));
    match op {
        0 => Node::Add(child(), child()),
        1 => Node::Mul(child(), child()),
        2 => Node::Ln(child()),
        3 => Node::Exp(child()),
        _ => Node::Sqrt(child()),
    }
}

fn eval(node: &Node, prec: u32) -> Option<Interval> {
    Some(match node {
        Node::Leaf(r) => Interval::from_rat(r, prec),
        Node::Add(a, b) => &eval(a, prec)? + &eval(b, prec)?,
        Node::Mul(a, b) => &eval(a, prec)? * &eval(b, prec)?,
        Node::Ln(a) => eval(a, prec)?.ln().ok()?,
        Node::Exp(a) => {
            let x = eval(a, prec)?;
            if x.to_f64().abs() > 50.0 {
                return None;
            }
            x.exp().ok()?
        }
        Node::Sqrt(a) => eval(a, prec)?.sqrt().ok()?,
    })
}

#[test]
fn doubling_precision_refines_random_compositions() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut checked = 0;
    while checked < 1000 {
        let tree = random_node(&mut rng, 4);
        let prec = rng.gen_range(32..160);
        let (Some(coarse), Some(fine)) = (eval(&tree, prec), eval(&tree, 2 * prec)) else {
            continue;
        };
        assert!(coarse.contains(&fine), "{tree:?} at {prec}: {coarse} vs {fine}");
        assert!(fine.width_rat() <= coarse.width_rat());
        checked += 1;
    }
}

#[test]
fn widths_shrink_as_precision_grows() {
    let x = Interval::from_rat(&rat(17, 7), 64);
    let ops: [(&str, fn(&Interval) -> Interval); 5] = [
        ("ln", |v| v.ln().unwrap()),
        ("exp", |v| v.exp().unwrap()),
        ("sqrt", |v| v.sqrt().unwrap()),
        ("sqr", |v| v.sqr()),
        ("recip", |v| v.recip().unwrap()),
    ];
    for (name, op) in ops {
        let mut last: Option<Rat> = None;
        for prec in [64, 128, 256, 512, 1024] {
            let w = op(&x.with_prec(prec)).width_rat();
            if let Some(prev) = &last {
                assert!(&w <= prev, "{name} at {prec}");
            }
            last = Some(w);
        }
    }
    for which in [Constant::Pi, Constant::E, Constant::Sqrt2Pi] {
        let a = const_enclosure(which, 100).width_rat();
        let b = const_enclosure(which, 200).width_rat();
        assert!(b <= a);
    }
}

#[test]
fn factorial_recursion() {
    let mut prev = factorial(0);
    for n in 1..=500u64 {
        let f = factorial(n);
        assert_eq!(f, &prev * BigInt::from(n));
        prev = f;
    }
}

#[test]
fn verdicts_do_not_depend_on_the_ceiling() {
    let a = RatFunc::new(Poly::one(), Poly::from_ints(&[1, 12])).unwrap();
    for n in 1..=30 {
        let low = strict_compare(n, &a, Direction::Lower, 64);
        let high = strict_compare(n, &a, Direction::Lower, 4096);
        if let (Ok(l), Ok(h)) = (low, high) {
            assert_eq!(l.holds, h.holds, "n = {n}");
        }
    }
}

#[test]
fn log_bound_matches_reference_values() {
    let b = eval_log_bound(1, &RatFunc::zero(), 128).unwrap();
    // ½ln(2π) − 1 = −0.08106146679…
    assert!(b.hi_rat() < rat(-810614667, 10_000_000_000));
    assert!(b.lo_rat() > rat(-810614668, 10_000_000_000));
    assert!(eval_log_bound(5, &RatFunc::constant(int(1)), 64).is_ok());
}
