//! Named notation systems and orders.
//!
//! A system name is either a short form `<layer>X<base>` such as `expX3`,
//! `derivX2`, `deriv2Xw` or `veblen2X3` (the base is a chain of that size,
//! or `w` for ω), or a full `<recipe>@<order>` such as `deriv:exp@lam`.

use crate::error::{Error, Result};
use crate::hierarchy::Recipe;
use crate::notation::NotationSystem;
use crate::order::CodedOrder;
use crate::term::Term;

/// `chain<n>`, `omega`, `omega_star`, `empty`.
pub fn builtin_order(name: &str) -> Option<CodedOrder> {
    match name {
        "omega" => Some(CodedOrder::omega()),
        "omega_star" => Some(CodedOrder::omega_star()),
        "empty" => Some(CodedOrder::empty("empty")),
        _ => {
            let n: u64 = name.strip_prefix("chain")?.parse().ok()?;
            Some(CodedOrder::chain(name, n))
        }
    }
}

fn short_recipe(layer: &str) -> Option<Recipe> {
    let exp = Recipe::Exponential;
    Some(match layer {
        "exp" => exp,
        "deriv" => Recipe::Derivative(Box::new(exp)),
        "deriv2" => Recipe::Derivative(Box::new(Recipe::Derivative(Box::new(exp)))),
        _ => {
            let k: usize = layer.strip_prefix("veblen")?.parse().ok()?;
            Recipe::Veblen(Box::new(exp), Term::nat(k))
        }
    })
}

/// Looks `name` up among `orders` first, then the builtins.
pub fn find_order(name: &str, orders: &[CodedOrder]) -> Result<CodedOrder> {
    orders
        .iter()
        .find(|o| o.name() == name)
        .cloned()
        .or_else(|| builtin_order(name))
        .ok_or_else(|| Error::Unknown {
            kind: "order",
            name: name.to_string(),
        })
}

pub fn resolve_system(name: &str, orders: &[CodedOrder]) -> Result<NotationSystem> {
    let unknown = || Error::Unknown {
        kind: "system",
        name: name.to_string(),
    };
    if let Some((recipe, order)) = name.split_once('@') {
        let r = Recipe::parse(recipe)?;
        return Ok(r.build(&find_order(order, orders)?)?.with_name(name));
    }
    let (layer, base) = name.rsplit_once('X').ok_or_else(unknown)?;
    let recipe = short_recipe(layer).ok_or_else(unknown)?;
    let base = match base {
        "w" => CodedOrder::omega(),
        n => CodedOrder::chain(format!("chain{n}"), n.parse().map_err(|_| unknown())?),
    };
    Ok(recipe.build(&base)?.with_name(name))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn short_names() {
        let s = resolve_system("expX3", &[]).unwrap();
        assert!(s.is_exponential());
        assert_eq!(s.base().field().unwrap(), vec![0, 1, 2]);
        assert_eq!(resolve_system("derivX2", &[]).unwrap().const_prefix(), "G'");
        assert!(resolve_system("veblen2X1", &[]).is_ok());
        assert!(resolve_system("derivXw", &[]).is_ok());
        assert!(resolve_system("fooX3", &[]).is_err());
        assert!(resolve_system("exp@nowhere", &[]).is_err());
        let lam = CodedOrder::chain("lam", 2);
        assert!(resolve_system("deriv:exp@lam", &[lam]).is_ok());
    }
}
