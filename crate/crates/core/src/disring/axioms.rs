use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{arrow, inf2, leq, sup2, Instance};

pub const DEFAULT_SEED: u64 = 0x5eed_d15c;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxiomGroup {
    Disgroup,
    Halved,
    Unital,
    AssociativeDis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    AddCommutative,
    AddAssociative,
    AddIdentity,
    DisSymmetric,
    DisUnit,
    DisZeroIffEqual,
    DisAdditive,
    DisDoubling,
    DoubleOrderReflects,
    Triangle,
    Cancellation,
    HalfSum,
    HalfAdditive,
    SupUpperBound,
    InfLowerBound,
    SupLeast,
    InfGreatest,
    SupInfSum,
    SupInfDis,
    ArrowLaws,
    MulCommutative,
    MulAssociative,
    MulIdentity,
    MulZero,
    Distributive,
    DisDistributive,
    DisAssociative,
}

impl Axiom {
    pub const ALL: [Axiom; 27] = [
        Axiom::AddCommutative,
        Axiom::AddAssociative,
        Axiom::AddIdentity,
        Axiom::DisSymmetric,
        Axiom::DisUnit,
        Axiom::DisZeroIffEqual,
        Axiom::DisAdditive,
        Axiom::DisDoubling,
        Axiom::DoubleOrderReflects,
        Axiom::Triangle,
        Axiom::Cancellation,
        Axiom::HalfSum,
        Axiom::HalfAdditive,
        Axiom::SupUpperBound,
        Axiom::InfLowerBound,
        Axiom::SupLeast,
        Axiom::InfGreatest,
        Axiom::SupInfSum,
        Axiom::SupInfDis,
        Axiom::ArrowLaws,
        Axiom::MulCommutative,
        Axiom::MulAssociative,
        Axiom::MulIdentity,
        Axiom::MulZero,
        Axiom::Distributive,
        Axiom::DisDistributive,
        Axiom::DisAssociative,
    ];

    pub fn group(self) -> AxiomGroup {
        use Axiom::*;
        match self {
            HalfSum | HalfAdditive | SupUpperBound | InfLowerBound | SupLeast | InfGreatest
            | SupInfSum | SupInfDis | ArrowLaws => AxiomGroup::Halved,
            MulCommutative | MulAssociative | MulIdentity | MulZero | Distributive
            | DisDistributive => AxiomGroup::Unital,
            DisAssociative => AxiomGroup::AssociativeDis,
            _ => AxiomGroup::Disgroup,
        }
    }

    pub fn arity(self) -> usize {
        use Axiom::*;
        match self {
            AddIdentity | DisUnit | HalfSum | MulIdentity | MulZero => 1,
            AddCommutative | DisSymmetric | DisZeroIffEqual | DisDoubling | DoubleOrderReflects
            | HalfAdditive | SupUpperBound | InfLowerBound | SupInfSum | SupInfDis | ArrowLaws
            | MulCommutative => 2,
            _ => 3,
        }
    }

    pub fn name(self) -> &'static str {
        use Axiom::*;
        match self {
            AddCommutative => "a + b = b + a",
            AddAssociative => "(a + b) + c = a + (b + c)",
            AddIdentity => "a + 0 = a",
            DisSymmetric => "a <-> b = b <-> a",
            DisUnit => "a <-> 0 = a",
            DisZeroIffEqual => "a <-> b = 0 iff a = b",
            DisAdditive => "(a + x) <-> (b + x) = a <-> b",
            DisDoubling => "(a + a) <-> (b + b) = (a <-> b) + (a <-> b)",
            DoubleOrderReflects => "a + a <= b + b implies a <= b",
            Triangle => "a <-> b <= (a <-> x) + (b <-> x)",
            Cancellation => "a + x = b + x iff a = b",
            HalfSum => "a/2 + a/2 = a",
            HalfAdditive => "(a + b)/2 = a/2 + b/2",
            SupUpperBound => "a, b <= sup{a, b}",
            InfLowerBound => "inf{a, b} <= a, b",
            SupLeast => "a, b <= x implies sup{a, b} <= x",
            InfGreatest => "x <= a, b implies x <= inf{a, b}",
            SupInfSum => "sup{a, b} + inf{a, b} = a + b",
            SupInfDis => "sup{a, b} <-> inf{a, b} = a <-> b",
            ArrowLaws => "arrow laws",
            MulCommutative => "a b = b a",
            MulAssociative => "(a b) c = a (b c)",
            MulIdentity => "1 a = a",
            MulZero => "0 a = 0",
            Distributive => "a (b + c) = a b + a c",
            DisDistributive => "(a <-> b) x = a x <-> b x",
            DisAssociative => "(a <-> b) <-> c = a <-> (b <-> c)",
        }
    }

    /// Evaluates the axiom on `args`, which must have length `self.arity()`.
    /// Operations missing from the instance make the axiom fail.
    pub fn holds<I: Instance>(self, inst: &I, args: &[I::Elem]) -> bool {
        assert_eq!(args.len(), self.arity(), "wrong number of arguments for {self:?}");
        let eq = |x: &I::Elem, y: &I::Elem| inst.eq(x, y);
        let add = |x: &I::Elem, y: &I::Elem| inst.add(x, y);
        let dis = |x: &I::Elem, y: &I::Elem| inst.dis(x, y);
        let zero = inst.zero();
        let a = &args[0];
        let b = args.get(1).unwrap_or(a);
        let c = args.get(2).unwrap_or(a);
        use Axiom::*;
        match self {
            AddCommutative => eq(&add(a, b), &add(b, a)),
            AddAssociative => eq(&add(&add(a, b), c), &add(a, &add(b, c))),
            AddIdentity => eq(&add(a, &zero), a),
            DisSymmetric => eq(&dis(a, b), &dis(b, a)),
            DisUnit => eq(&dis(a, &zero), a),
            DisZeroIffEqual => eq(&dis(a, b), &zero) == eq(a, b),
            DisAdditive => eq(&dis(&add(a, c), &add(b, c)), &dis(a, b)),
            DisDoubling => {
                let d = dis(a, b);
                eq(&dis(&add(a, a), &add(b, b)), &add(&d, &d))
            }
            DoubleOrderReflects => !leq(inst, &add(a, a), &add(b, b)) || leq(inst, a, b),
            Triangle => leq(inst, &dis(a, b), &add(&dis(a, c), &dis(b, c))),
            Cancellation => eq(&add(a, c), &add(b, c)) == eq(a, b),
            HalfSum => match inst.halve(a) {
                Some(h) => eq(&add(&h, &h), a),
                None => false,
            },
            HalfAdditive => match (inst.halve(&add(a, b)), inst.halve(a), inst.halve(b)) {
                (Some(s), Some(ha), Some(hb)) => eq(&s, &add(&ha, &hb)),
                _ => false,
            },
            SupUpperBound => match sup2(inst, a, b) {
                Ok(s) => leq(inst, a, &s) && leq(inst, b, &s),
                Err(_) => false,
            },
            InfLowerBound => match inf2(inst, a, b) {
                Ok(m) => leq(inst, &m, a) && leq(inst, &m, b),
                Err(_) => false,
            },
            SupLeast => match sup2(inst, a, b) {
                Ok(s) => !(leq(inst, a, c) && leq(inst, b, c)) || leq(inst, &s, c),
                Err(_) => false,
            },
            InfGreatest => match inf2(inst, a, b) {
                Ok(m) => !(leq(inst, c, a) && leq(inst, c, b)) || leq(inst, c, &m),
                Err(_) => false,
            },
            SupInfSum => match (sup2(inst, a, b), inf2(inst, a, b)) {
                (Ok(s), Ok(m)) => eq(&add(&s, &m), &add(a, b)),
                _ => false,
            },
            SupInfDis => match (sup2(inst, a, b), inf2(inst, a, b)) {
                (Ok(s), Ok(m)) => eq(&dis(&s, &m), &dis(a, b)),
                _ => false,
            },
            ArrowLaws => arrow_laws(inst, a, b).unwrap_or(false),
            MulCommutative => binary_mul(inst, |m| eq(&m(a, b)?, &m(b, a)?).into()),
            MulAssociative => binary_mul(inst, |m| eq(&m(&m(a, b)?, c)?, &m(a, &m(b, c)?)?).into()),
            MulIdentity => match inst.one() {
                Some(one) => binary_mul(inst, |m| eq(&m(&one, a)?, a).into()),
                None => false,
            },
            MulZero => binary_mul(inst, |m| eq(&m(&zero, a)?, &zero).into()),
            Distributive => {
                binary_mul(inst, |m| eq(&m(a, &add(b, c))?, &add(&m(a, b)?, &m(a, c)?)).into())
            }
            DisDistributive => {
                binary_mul(inst, |m| eq(&m(&dis(a, b), c)?, &dis(&m(a, c)?, &m(b, c)?)).into())
            }
            DisAssociative => eq(&dis(&dis(a, b), c), &dis(a, &dis(b, c))),
        }
    }
}

fn binary_mul<I: Instance>(
    inst: &I,
    check: impl Fn(&dyn Fn(&I::Elem, &I::Elem) -> Option<I::Elem>) -> Option<bool>,
) -> bool {
    check(&|x, y| inst.mul(x, y)).unwrap_or(false)
}

fn arrow_laws<I: Instance>(inst: &I, a: &I::Elem, b: &I::Elem) -> Option<bool> {
    let zero = inst.zero();
    let eq = |x: &I::Elem, y: &I::Elem| inst.eq(x, y);
    let ab = arrow(inst, a, b).ok()?;
    let ba = arrow(inst, b, a).ok()?;
    let ok = eq(&arrow(inst, a, a).ok()?, &zero)
        && eq(&arrow(inst, a, &zero).ok()?, &zero)
        && eq(&arrow(inst, &zero, a).ok()?, a)
        && eq(&ab, &zero) == leq(inst, b, a)
        && eq(&inst.dis(a, b), &inst.add(&ab, &ba))
        && eq(&inst.dis(a, b), &sup2(inst, &ab, &ba).ok()?);
    Some(ok)
}

#[derive(Debug, Clone)]
pub struct AxiomOutcome<E> {
    pub axiom: Axiom,
    /// Number of argument tuples evaluated.
    pub checked: usize,
    /// First failing argument tuple, if any.
    pub witness: Option<Vec<E>>,
}

impl<E> AxiomOutcome<E> {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Debug, Clone)]
pub struct AxiomReport<E> {
    pub instance: &'static str,
    pub exhaustive: bool,
    pub outcomes: Vec<AxiomOutcome<E>>,
}

impl<E> AxiomReport<E> {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(AxiomOutcome::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomOutcome<E>> {
        self.outcomes.iter().filter(|o| !o.passed())
    }
}

impl<E: fmt::Display> fmt::Display for AxiomReport<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mode = if self.exhaustive { "exhaustive" } else { "sampled" };
        writeln!(f, "instance {} ({mode})", self.instance)?;
        for o in &self.outcomes {
            match &o.witness {
                None => writeln!(f, "  pass  {:<45} ({} cases)", o.axiom.name(), o.checked)?,
                Some(w) => {
                    let w: Vec<String> = w.iter().map(ToString::to_string).collect();
                    writeln!(f, "  FAIL  {:<45} witness ({})", o.axiom.name(), w.join(", "))?
                }
            }
        }
        Ok(())
    }
}

fn claimed<I: Instance>(inst: &I, axiom: Axiom) -> bool {
    let claims = inst.claims();
    match axiom.group() {
        AxiomGroup::Disgroup => true,
        AxiomGroup::Halved => claims.halved,
        AxiomGroup::Unital => claims.unital,
        AxiomGroup::AssociativeDis => claims.associative_dis,
    }
}

/// Checks every axiom the instance claims. Finite carriers are checked
/// exhaustively; otherwise all tuples over the instance seeds are checked
/// followed by `sample_budget` random tuples per axiom.
pub fn check_axioms<I: Instance>(inst: &I, sample_budget: usize) -> AxiomReport<I::Elem> {
    check_axioms_seeded(inst, sample_budget, DEFAULT_SEED)
}

pub fn check_axioms_seeded<I: Instance>(
    inst: &I,
    sample_budget: usize,
    seed: u64,
) -> AxiomReport<I::Elem> {
    let finite = inst.elements();
    let exhaustive = finite.is_some();
    let base = finite.unwrap_or_else(|| inst.seeds());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut outcomes = Vec::new();
    for axiom in Axiom::ALL.into_iter().filter(|&ax| claimed(inst, ax)) {
        let mut checked = 0;
        let mut witness = None;
        for args in product(&base, axiom.arity()) {
            checked += 1;
            if !axiom.holds(inst, &args) {
                witness = Some(args);
                break;
            }
        }
        if witness.is_none() && !exhaustive {
            for _ in 0..sample_budget {
                let mut args: Vec<I::Elem> = Vec::with_capacity(axiom.arity());
                for i in 0..axiom.arity() {
                    // repeat an earlier argument now and then so equality cases get hit
                    if i > 0 && rng.gen_bool(0.2) {
                        let j = rng.gen_range(0..i);
                        args.push(args[j].clone());
                    } else {
                        args.push(inst.sample(&mut rng));
                    }
                }
                checked += 1;
                if !axiom.holds(inst, &args) {
                    witness = Some(args);
                    break;
                }
            }
        }
        outcomes.push(AxiomOutcome { axiom, checked, witness });
    }
    AxiomReport { instance: inst.name(), exhaustive, outcomes }
}

fn product<E: Clone>(base: &[E], arity: usize) -> Vec<Vec<E>> {
    let mut out: Vec<Vec<E>> = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                base.iter().map(move |e| {
                    let mut v = prefix.clone();
                    v.push(e.clone());
                    v
                })
            })
            .collect();
    }
    out
}
