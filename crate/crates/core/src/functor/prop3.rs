use crate::error::{Error, Result};

/// The cardinality count showing that the variable-basis functor cannot
/// preserve binary coproducts: for a base of size `n`, the hom-set out of
/// the coproduct has `n⁴` elements while preservation would force `n²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Prop3 {
    pub n: u64,
    pub lhs: u128,
    pub rhs: u128,
    pub equal: bool,
}

pub fn prop3_demo(n: u64) -> Result<Prop3> {
    if n == 0 {
        return Err(Error::Malformed("the base must be non-empty".into()));
    }
    let square = u128::from(n) * u128::from(n);
    let lhs = square
        .checked_mul(square)
        .ok_or_else(|| Error::Malformed(format!("n = {n} overflows the count")))?;
    Ok(Prop3 {
        n,
        lhs,
        rhs: square,
        equal: lhs == square,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values() {
        let t = |n| {
            let p = prop3_demo(n).unwrap();
            (p.lhs, p.rhs, p.equal)
        };
        assert_eq!(t(2), (16, 4, false));
        assert_eq!(t(3), (81, 9, false));
        assert_eq!(t(1), (1, 1, true));
        assert!(prop3_demo(0).is_err());
    }
}
