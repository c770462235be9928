use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{AddAssign, MulAssign, SubAssign};
use std::str::FromStr;

use num_integer::Integer;
use num_traits::Signed;

/// Integer ring used for the coefficients of every polynomial in q.
///
/// `BigInt` is the production choice; fixed-width integers also satisfy the
/// bound and are handy in tests, at the caller's risk of overflow.
pub trait Coeff:
    Clone
    + Eq
    + Ord
    + Hash
    + Debug
    + Display
    + FromStr
    + Integer
    + Signed
    + From<i32>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + Send
    + Sync
    + 'static
{
}

impl<T> Coeff for T where
    T: Clone
        + Eq
        + Ord
        + Hash
        + Debug
        + Display
        + FromStr
        + Integer
        + Signed
        + From<i32>
        + for<'a> AddAssign<&'a T>
        + for<'a> SubAssign<&'a T>
        + for<'a> MulAssign<&'a T>
        + Send
        + Sync
        + 'static
{
}
