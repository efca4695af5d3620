use num_bigint::{BigInt, BigUint};
use serde::Serializer;

// Big integers go out as decimal strings so JSON consumers never lose precision.

pub(crate) fn biguint_str<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub(crate) fn bigint_str<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub(crate) fn ordering_str<S: Serializer>(v: &std::cmp::Ordering, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(match v {
        std::cmp::Ordering::Less => "less",
        std::cmp::Ordering::Equal => "equal",
        std::cmp::Ordering::Greater => "greater",
    })
}
