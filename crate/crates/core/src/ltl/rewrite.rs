use super::{Assignment, Formula};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Chain {
    And,
    Or,
}

fn push_flat(op: Chain, f: Formula, out: &mut Vec<Formula>) {
    match (op, f) {
        (Chain::And, Formula::And(l, r)) | (Chain::Or, Formula::Or(l, r)) => {
            push_flat(op, *l, out);
            push_flat(op, *r, out);
        }
        (_, f) => out.push(f),
    }
}

fn simplify_chain(op: Chain, l: &Formula, r: &Formula) -> Formula {
    // Absorbing and neutral elements of the connective.
    let (absorbing, neutral) = match op {
        Chain::And => (Formula::False, Formula::True),
        Chain::Or => (Formula::True, Formula::False),
    };
    let mut flat = Vec::new();
    push_flat(op, simplify(l), &mut flat);
    push_flat(op, simplify(r), &mut flat);
    if flat.contains(&absorbing) {
        return absorbing;
    }
    let mut keyed: Vec<(String, Formula)> = flat
        .into_iter()
        .filter(|f| *f != neutral)
        .map(|f| (f.to_string(), f))
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    keyed.dedup_by(|a, b| a.1 == b.1);
    let ops = keyed.into_iter().map(|(_, f)| f);
    match op {
        Chain::And => Formula::and_all(ops),
        Chain::Or => Formula::or_all(ops),
    }
}

/// Syntactic simplification to a deterministic fixpoint.
///
/// Folds constants, removes double negation, flattens `&`/`|` chains, orders
/// their operands by rendered text and drops duplicates. Temporal operators
/// are kept as they are (only their operands are simplified).
pub fn simplify(f: &Formula) -> Formula {
    match f {
        Formula::True | Formula::False | Formula::Atom(_) => f.clone(),
        Formula::Not(g) => match simplify(g) {
            Formula::True => Formula::False,
            Formula::False => Formula::True,
            Formula::Not(h) => *h,
            s => Formula::not(s),
        },
        Formula::And(l, r) => simplify_chain(Chain::And, l, r),
        Formula::Or(l, r) => simplify_chain(Chain::Or, l, r),
        Formula::Next(g) => Formula::next(simplify(g)),
        Formula::Eventually(g) => Formula::eventually(simplify(g)),
        Formula::Globally(g) => Formula::globally(simplify(g)),
        Formula::Until(l, r) => Formula::until(simplify(l), simplify(r)),
    }
}

fn map_atoms(
    f: &Formula,
    into_residues: bool,
    g: &mut impl FnMut(&str) -> Option<Formula>,
) -> Formula {
    let mut rec = |x: &Formula| map_atoms(x, into_residues, g);
    match f {
        Formula::True | Formula::False => f.clone(),
        Formula::Atom(a) => g(a).unwrap_or_else(|| f.clone()),
        Formula::Next(_) if !into_residues => f.clone(),
        Formula::Not(x) => Formula::not(rec(x)),
        Formula::Next(x) => Formula::next(rec(x)),
        Formula::Eventually(x) => Formula::eventually(rec(x)),
        Formula::Globally(x) => Formula::globally(rec(x)),
        Formula::And(l, r) => {
            let l = rec(l);
            Formula::and(l, rec(r))
        }
        Formula::Or(l, r) => {
            let l = rec(l);
            Formula::or(l, rec(r))
        }
        Formula::Until(l, r) => {
            let l = rec(l);
            Formula::until(l, rec(r))
        }
    }
}

/// Replaces every occurrence of `atom` by the constant `value`, then simplifies.
pub fn substitute(f: &Formula, atom: &str, value: bool) -> Formula {
    simplify(&map_atoms(f, true, &mut |a| {
        (a == atom).then(|| Formula::constant(value))
    }))
}

/// Replaces every step-level occurrence (outside `X`) of an atom `a` by
/// `replace(a)` when that returns `Some`. No simplification.
pub fn substitute_step_atoms(
    f: &Formula,
    mut replace: impl FnMut(&str) -> Option<Formula>,
) -> Formula {
    map_atoms(f, false, &mut replace)
}

/// Replaces every occurrence of an atom `a` by `replace(a)` when that
/// returns `Some`. No simplification.
pub fn substitute_atoms(f: &Formula, mut replace: impl FnMut(&str) -> Option<Formula>) -> Formula {
    map_atoms(f, true, &mut replace)
}

/// Textual renaming of `from` to `to`; no simplification.
pub fn rename(f: &Formula, from: &str, to: &str) -> Formula {
    map_atoms(f, true, &mut |a| (a == from).then(|| Formula::atom(to)))
}

/// One-step expansion of `F`, `G` and `U` into their step-`t` part and an
/// `X`-wrapped residue. Residues (including user-written `X`) are left alone.
pub fn expand_step(f: &Formula) -> Formula {
    match f {
        Formula::True | Formula::False | Formula::Atom(_) | Formula::Next(_) => f.clone(),
        Formula::Not(g) => Formula::not(expand_step(g)),
        Formula::And(l, r) => Formula::and(expand_step(l), expand_step(r)),
        Formula::Or(l, r) => Formula::or(expand_step(l), expand_step(r)),
        Formula::Eventually(g) => Formula::or(expand_step(g), Formula::next(f.clone())),
        Formula::Globally(g) => Formula::and(expand_step(g), Formula::next(f.clone())),
        Formula::Until(l, r) => Formula::or(
            expand_step(r),
            Formula::and(expand_step(l), Formula::next(f.clone())),
        ),
    }
}

/// Removes one `X` from every residue reachable without crossing another `X`.
pub fn strip_residues(f: &Formula) -> Formula {
    match f {
        Formula::Next(g) => (**g).clone(),
        Formula::True | Formula::False | Formula::Atom(_) => f.clone(),
        Formula::Not(g) => Formula::not(strip_residues(g)),
        Formula::And(l, r) => Formula::and(strip_residues(l), strip_residues(r)),
        Formula::Or(l, r) => Formula::or(strip_residues(l), strip_residues(r)),
        // Unreachable after expansion; kept total for arbitrary input.
        Formula::Eventually(_) | Formula::Globally(_) | Formula::Until(..) => f.clone(),
    }
}

/// Progression with a caller-supplied replacement for step-level atoms:
/// expand, replace, simplify (residues opaque), strip one `X`, simplify.
pub fn progress_by(f: &Formula, replace: impl FnMut(&str) -> Option<Formula>) -> Formula {
    let expanded = expand_step(f);
    let substituted = simplify(&substitute_step_atoms(&expanded, replace));
    simplify(&strip_residues(&substituted))
}

/// Rewrites `f` into the obligation for the next step given the observed
/// values at the current step. Unknown atoms stay symbolic.
pub fn progress(f: &Formula, step: &Assignment) -> Formula {
    progress_by(f, |a| step.get(a).definite().map(Formula::constant))
}
