mod common;

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use progtab::equiv::{equivalent_partition, extend_weights, reduce, swap};
use progtab::ltl::{expand_step, parse, progress, rename, render, simplify, Formula, Step};
use progtab::monitor::{plan, Topology};
use progtab::synth::{minimize, synthesize, SumOfProducts, Term};
use progtab::table::{build_table, influence_weights, row_result, CountMode, Mode, Weight};
use progtab::{Assignment, Truth3};

use common::{all_valuations, atoms, eval_constant, eval_lasso, random_formula, sop_holds};

fn formula_from(seed: u64, n: usize, temporal: bool) -> Formula {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_formula(&mut rng, &atoms("a", n), 4, temporal)
}

fn lasso_from(seed: u64, n: usize) -> (Vec<Step>, Vec<Step>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars = atoms("a", n);
    let step =
        |rng: &mut ChaCha8Rng| -> Step { vars.iter().map(|a| (a.clone(), rng.gen())).collect() };
    let prefix = (0..rng.gen_range(1..4)).map(|_| step(&mut rng)).collect();
    let cycle = (0..rng.gen_range(1..4)).map(|_| step(&mut rng)).collect();
    (prefix, cycle)
}

fn assignment_of(step: &Step) -> Assignment {
    step.iter()
        .map(|(a, v)| (a.clone(), Truth3::from_bool(*v)))
        .collect()
}

/// Three-valued configuration of `vars` drawn from `seed`.
fn config_from(seed: u64, vars: &[String]) -> Assignment {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    vars.iter()
        .map(|v| {
            let t = match rng.gen_range(0..3) {
                0 => Truth3::Unknown,
                1 => Truth3::Bot,
                _ => Truth3::Top,
            };
            (v.clone(), t)
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn render_then_parse_is_identity(seed: u64, n in 1usize..5) {
        let f = formula_from(seed, n, true);
        prop_assert_eq!(parse(&render(&f)).unwrap(), f);
    }

    #[test]
    fn simplify_is_idempotent_and_keeps_meaning(seed: u64, lasso: u64, n in 1usize..4) {
        let f = formula_from(seed, n, true);
        let s = simplify(&f);
        prop_assert_eq!(simplify(&s), s.clone());
        let (prefix, cycle) = lasso_from(lasso, n);
        prop_assert_eq!(eval_lasso(&f, &prefix, &cycle, 0), eval_lasso(&s, &prefix, &cycle, 0));
    }

    #[test]
    fn expansion_keeps_meaning(seed: u64, lasso: u64, n in 1usize..4) {
        let f = formula_from(seed, n, true);
        let (prefix, cycle) = lasso_from(lasso, n);
        prop_assert_eq!(
            eval_lasso(&expand_step(&f), &prefix, &cycle, 0),
            eval_lasso(&f, &prefix, &cycle, 0)
        );
    }

    #[test]
    fn progression_moves_one_step(seed: u64, lasso: u64, n in 1usize..4) {
        let f = formula_from(seed, n, true);
        let (prefix, cycle) = lasso_from(lasso, n);
        let next = progress(&f, &assignment_of(&prefix[0]));
        prop_assert_eq!(
            eval_lasso(&next, &prefix, &cycle, 1),
            eval_lasso(&f, &prefix, &cycle, 0)
        );
    }

    #[test]
    fn swap_is_an_involution(seed: u64, n in 2usize..5) {
        let f = formula_from(seed, n, true);
        prop_assert_eq!(swap(&swap(&f, "a0", "a1"), "a0", "a1"), f.clone());
        prop_assert_eq!(swap(&f, "a0", "a1"), swap(&f, "a1", "a0"));
        prop_assert_eq!(rename(&f, "a0", "a0"), f.clone());
        prop_assert!(!rename(&f, "a0", "a1").contains_atom("a0"));
    }

    #[test]
    fn minimize_keeps_the_function(raw in prop::collection::vec(prop::collection::btree_map(0usize..4, any::<bool>(), 0..4), 0..8)) {
        let vars = atoms("v", 4);
        let terms = raw.into_iter().map(|m| Term::from_literals(m.into_iter().map(|(i, s)| (vars[i].clone(), s))));
        let s = SumOfProducts::new(Formula::True, terms);
        let m = minimize(&s);
        prop_assert!(m.terms.len() <= s.terms.len());
        for v in all_valuations(&vars) {
            prop_assert_eq!(sop_holds(&m, &v), sop_holds(&s, &v));
        }
    }

    #[test]
    fn rows_are_covered_by_their_trigger(seed: u64, n in 1usize..4, temporal: bool) {
        let f = formula_from(seed, n, temporal);
        let t = build_table(&f, Mode::Progression).unwrap();
        let sops: BTreeMap<&Formula, SumOfProducts> =
            t.results().into_iter().map(|r| (r, synthesize(&t, r).unwrap())).collect();
        for row in &t.rows {
            let k = t.assignment(row);
            prop_assert!(sops[&row.result].terms.iter().any(|term| term.satisfied_by(&k)));
        }
    }

    #[test]
    fn fully_known_rows_select_no_other_constant(seed: u64, n in 1usize..4) {
        let f = formula_from(seed, n, false);
        let t = build_table(&f, Mode::Propositional).unwrap();
        let constants: Vec<SumOfProducts> = t
            .results()
            .into_iter()
            .filter(|r| r.is_constant())
            .map(|r| synthesize(&t, r).unwrap())
            .collect();
        for row in t.rows.iter().filter(|r| r.config.iter().all(|c| c.is_definite())) {
            let k = t.assignment(row);
            for s in &constants {
                if s.terms.iter().any(|term| term.satisfied_by(&k)) {
                    prop_assert_eq!(&s.target, &row.result);
                }
            }
        }
    }

    #[test]
    fn classes_commute_with_rows(seed: u64, config: u64, n in 2usize..5) {
        let f = formula_from(seed, n, true);
        let p = equivalent_partition(&f);
        let vars: Vec<String> = f.props().into_iter().collect();
        let k = config_from(config, &vars);
        let base = row_result(&f, Mode::Progression, &k);
        for class in &p.classes {
            for (i, a) in class.iter().enumerate() {
                for b in &class[i + 1..] {
                    let mut swapped = k.clone();
                    swapped.set(a.clone(), k.get(b));
                    swapped.set(b.clone(), k.get(a));
                    prop_assert_eq!(
                        row_result(&f, Mode::Progression, &swapped),
                        simplify(&swap(&base, a, b))
                    );
                }
            }
        }
    }

    #[test]
    fn reduction_keeps_two_per_class(seed: u64, n in 1usize..6) {
        let f = simplify(&formula_from(seed, n, true));
        let p = equivalent_partition(&f);
        let rm = reduce(&f, &p);
        let kept = p.singletons.len() + 2 * p.classes.len();
        prop_assert_eq!(rm.reduced.props().len(), kept);
        for (class, dropped) in p.classes.iter().zip(&rm.dropped) {
            prop_assert_eq!(dropped.len(), class.len() - 2);
        }
    }

    #[test]
    fn weight_one_lifts_to_one(seed: u64, n in 1usize..6) {
        let f = simplify(&formula_from(seed, n, true));
        let rm = reduce(&f, &equivalent_partition(&f));
        let one = |_: &String| Weight { numerator: 1, denominator: 1, mode: CountMode::StepOnly };
        let w: BTreeMap<String, Weight> = rm.reduced.props().iter().map(|a| (a.clone(), one(a))).collect();
        let lifted = extend_weights(&rm, &w, CountMode::StepOnly).unwrap();
        prop_assert_eq!(lifted.len(), f.props().len());
        prop_assert!(lifted.values().all(|x| x.value == 1.0 && !x.approximate));
    }

    #[test]
    fn minimal_atoms_fix_the_obligation(seed: u64, config: u64, n in 1usize..5, procs in 1usize..4) {
        let f = formula_from(seed, n, true);
        prop_assume!(!f.props().is_empty());
        let vars = atoms("a", n);
        let topo = Topology::new((0..procs).map(|i| {
            (format!("P{i}"), vars.iter().skip(i).step_by(procs).cloned().collect::<Vec<_>>())
        }).filter(|(_, a)| !a.is_empty())).unwrap();
        let pl = plan(&f, &topo, CountMode::StepOnly).unwrap();
        for proc in &topo.processes {
            let alphabet: Vec<String> = proc.alphabet.iter().cloned().collect();
            let local = config_from(config, &alphabet);
            let m = pl.minimal_atoms(&local);
            let known: BTreeSet<String> = local.definite().map(|(a, _)| a.clone()).collect();
            prop_assert!(m.is_subset(&known));
            let restricted: Assignment = local.iter().filter(|(a, _)| m.contains(*a)).map(|(a, v)| (a.clone(), v)).collect();
            let full: Assignment = local.iter().filter(|(a, _)| f.props().contains(*a)).map(|(a, v)| (a.clone(), v)).collect();
            prop_assert_eq!(
                row_result(&f, Mode::Progression, &restricted),
                row_result(&f, Mode::Progression, &full)
            );
        }
    }

    #[test]
    fn ring_is_a_deterministic_permutation(seed: u64, n in 1usize..5, procs in 1usize..4) {
        let f = formula_from(seed, n, true);
        let vars = atoms("a", n);
        let topo = Topology::new((0..procs).map(|i| {
            (format!("P{i}"), vars.iter().skip(i).step_by(procs).cloned().collect::<Vec<_>>())
        }).filter(|(_, a)| !a.is_empty())).unwrap();
        let a = plan(&f, &topo, CountMode::StepOnly).unwrap();
        let b = plan(&f, &topo, CountMode::StepOnly).unwrap();
        prop_assert_eq!(&a.ring, &b.ring);
        let mut ids: Vec<String> = topo.processes.iter().map(|p| p.id.clone()).collect();
        let mut ring = a.ring.clone();
        ids.sort();
        ring.sort();
        prop_assert_eq!(ring, ids);
    }
}

#[test]
fn eventually_all_weight_is_two_thirds_power() {
    for n in 1..=6u32 {
        let vars = atoms("a", n as usize);
        let f = Formula::eventually(Formula::and_all(
            vars.iter().map(|v| Formula::atom(v.as_str())),
        ));
        let t = build_table(&f, Mode::Progression).unwrap();
        for w in influence_weights(&t, CountMode::StepOnly).values() {
            assert_eq!(
                w.ratio(),
                num_rational::Ratio::new(2u64.pow(n - 1), 3u64.pow(n - 1)),
                "n = {n}"
            );
        }
    }
}

#[test]
fn constant_semantics_matches_propositional_rows() {
    let f = formula_from(3, 3, true);
    let vars: Vec<String> = f.props().into_iter().collect();
    for v in all_valuations(&vars) {
        let k: Assignment = v
            .iter()
            .map(|(a, b)| (a.clone(), Truth3::from_bool(*b)))
            .collect();
        let r = row_result(&f, Mode::Propositional, &k);
        assert_eq!(eval_constant(&r, &v), eval_constant(&f, &v), "{r}");
    }
}
