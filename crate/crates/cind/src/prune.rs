//! The pruning operation `⊕` on binary trees labelled by naturals.
//!
//! `⊕(s, t)` walks a shape `s` and a tree `t` together: where either is
//! empty the result is empty, otherwise the node keeps the sum of both labels
//! and recurses on both children. It is the measuring by the unfolding
//! coalgebra of `s` out of the initial algebra, so it is computed by
//! [`Measuring::structural`].

use std::sync::Arc;

use cind_core::{Algebra, Coalgebra, Elem, FunctorSig, Measuring, Monoid, Term};

use crate::dsl::interp::term_of;
use crate::dsl::{parse_term, ScriptError, SExpr};

/// `X ↦ 1 + ℕ × X × X`.
pub fn tree_sig() -> FunctorSig {
    FunctorSig::shape(Arc::new(Monoid::nat_plus()), 2)
}

/// Shape labels may be written `e`, which stands for 0.
fn shape_labels(s: &SExpr) -> SExpr {
    match s {
        SExpr::List(items) => {
            let mut out: Vec<SExpr> = items.iter().map(shape_labels).collect();
            if out[0] == SExpr::Atom("e".to_string()) {
                out[0] = SExpr::Atom("0".to_string());
            }
            SExpr::List(out)
        }
        other => other.clone(),
    }
}

/// `shape ⊕ tree`.
pub fn prune(shape: &SExpr, tree: &SExpr) -> Result<Term, String> {
    let sig = tree_sig();
    let s = term_of(&sig, &shape_labels(shape))?;
    let t = term_of(&sig, tree)?;
    let c = Coalgebra::of_terms("shape", sig.clone(), std::slice::from_ref(&s)).map_err(|e| e.to_string())?;
    let state = c.state_named(&render(&s)).expect("the root is a state");
    let terms = Arc::new(Algebra::initial(sig).map_err(|e| e.to_string())?);
    let phi = Measuring::structural(Arc::new(c), terms.clone(), terms).map_err(|e| e.to_string())?;
    match phi.eval(state, &Elem::Term(t)).map_err(|e| e.to_string())? {
        Elem::Term(r) => Ok(r),
        other => Err(format!("unexpected result {:?}", other)),
    }
}

pub fn render(t: &Term) -> String {
    t.render(&Monoid::nat_plus())
}

/// Parses both terms and prints `shape ⊕ tree`.
pub fn demo_prune(shape: &str, tree: &str) -> Result<String, ScriptError> {
    let s = parse_term(shape)?;
    let t = parse_term(tree)?;
    let pos = crate::dsl::Pos { line: 1, col: 1 };
    prune(&s, &t).map(|r| render(&r)).map_err(|message| ScriptError::Eval { pos, message })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_shape_or_tree_gives_empty() {
        assert_eq!(demo_prune("#b", "(5 (1 #b #b) #b)").unwrap(), "#b");
        assert_eq!(demo_prune("(e #b #b)", "#b").unwrap(), "#b");
    }

    #[test]
    fn one_level_keeps_the_root() {
        assert_eq!(demo_prune("(0 #b #b)", "(5 (1 #b #b) #b)").unwrap(), "(5 #b #b)");
    }

    #[test]
    fn zero_shapes_are_neutral() {
        let t = "(3 (1 #b (4 #b #b)) (2 #b #b))";
        assert_eq!(demo_prune("(0 (0 #b (0 #b #b)) (0 #b #b))", t).unwrap(), t);
    }

    #[test]
    fn labels_add() {
        assert_eq!(demo_prune("(2 (1 #b #b) #b)", "(5 (1 #b #b) (7 #b #b))").unwrap(), "(7 (2 #b #b) #b)");
    }
}
