//! Named carriers used by the examples: fuel counters, shape coalgebras and
//! bounded term algebras.

use alloc::format;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec;

use super::{Algebra, Coalgebra};
use crate::error::{Error, Result};
use crate::kernel::{FValue, FunctorSig, Monoid};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    Algebra(Algebra),
    Coalgebra(Coalgebra),
}

fn triv() -> Arc<Monoid> {
    Arc::new(Monoid::trivial())
}

/// `𝕟°` over `1 + X`: `i ↦ i−1`, `0 ↦ ⊥`.
pub fn nat_counter(n: usize) -> Coalgebra {
    Coalgebra::counter(FunctorSig::shape(triv(), 1), n).expect("arity 1").renamed(format!("nat_counter({})", n))
}

/// `S_n`: binary tree shapes of depth at most `n` over `1 + M × X × X`.
pub fn shape_coalg(m: Arc<Monoid>, n: usize) -> Coalgebra {
    Coalgebra::shapes(FunctorSig::shape(m, 2), n).expect("shape signature").renamed(format!("shape_coalg({})", n))
}

/// `S_{n,perf}`: states `0..n` over `1 + X × X`, `i ↦ (e, i−1, i−1)`.
pub fn perfect_shape(n: usize) -> Coalgebra {
    let sig = FunctorSig::shape(triv(), 2);
    let names = (0..=n).map(|i| i.to_string()).collect();
    let chi = (0..=n).map(|i| if i == 0 { FValue::Bottom } else { FValue::Node(0, vec![i - 1, i - 1]) }).collect();
    Coalgebra::new(format!("perfect_shape({})", n), sig, names, chi).expect("well-formed")
}

/// `𝕟`: numerals up to `n` with saturating successor.
pub fn nat_bounded(n: usize) -> Algebra {
    Algebra::bounded(FunctorSig::shape(triv(), 1), n).expect("shape signature").renamed(format!("nat({})", n))
}

/// `M*_n`: lists of length at most `n`, cons keeps the first `n` entries.
pub fn lists_bounded(m: Arc<Monoid>, n: usize) -> Algebra {
    let name = format!("lists({},{})", m.name(), n);
    Algebra::bounded(FunctorSig::shape(m, 1), n).expect("shape signature").renamed(name)
}

/// `T_{M,n}`: binary trees of depth at most `n` with truncating nodes.
pub fn trees_bounded(m: Arc<Monoid>, n: usize) -> Algebra {
    let name = format!("trees({},{})", m.name(), n);
    Algebra::bounded(FunctorSig::shape(m, 2), n).expect("shape signature").renamed(name)
}

/// `M*_n°`: lists of length at most `n`, unfolding to head and tail.
pub fn list_coalg(m: Arc<Monoid>, n: usize) -> Result<Coalgebra> {
    let name = format!("list_coalg({},{})", m.name(), n);
    Ok(Coalgebra::all_terms(FunctorSig::shape(m, 1), n)?.renamed(name))
}

/// `T_{M,n}°`: binary trees of depth at most `n`, unfolding.
pub fn tree_coalg(m: Arc<Monoid>, n: usize) -> Result<Coalgebra> {
    let name = format!("tree_coalg({},{})", m.name(), n);
    Ok(Coalgebra::all_terms(FunctorSig::shape(m, 2), n)?.renamed(name))
}

/// Looks a carrier up by name; `m` defaults to the trivial monoid.
pub fn builtin(name: &str, m: Option<Arc<Monoid>>, n: usize) -> Result<Builtin> {
    let m = m.unwrap_or_else(triv);
    Ok(match name {
        "nat_counter" => Builtin::Coalgebra(nat_counter(n)),
        "shape_coalg" => Builtin::Coalgebra(shape_coalg(m, n)),
        "perfect_shape" => Builtin::Coalgebra(perfect_shape(n)),
        "list_coalg" => Builtin::Coalgebra(list_coalg(m, n)?),
        "tree_coalg" => Builtin::Coalgebra(tree_coalg(m, n)?),
        "nat" => Builtin::Algebra(nat_bounded(n)),
        "lists" => Builtin::Algebra(lists_bounded(m, n)),
        "trees" => Builtin::Algebra(trees_bounded(m, n)),
        other => return Err(Error::UnknownBuiltin(other.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_examples() {
        let c = nat_counter(3);
        assert_eq!(c.chi(0), &FValue::Bottom);
        assert_eq!(c.chi(2), &FValue::Node(0, vec![1]));
        assert_eq!(shape_coalg(triv(), 2).len(), 5);
        let p = perfect_shape(2);
        assert_eq!(p.len(), 3);
        assert_eq!(p.chi(2), &FValue::Node(0, vec![1, 1]));
        assert!(matches!(builtin("nope", None, 1), Err(Error::UnknownBuiltin(_))));
    }
}
