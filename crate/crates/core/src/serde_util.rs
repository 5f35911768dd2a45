use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serializer;

/// Writes a nonnegative big integer as a plain JSON number when it fits in
/// 128 bits, falling back to a decimal string.
pub fn biguint_as_number<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    match v.to_u128() {
        Some(x) => s.serialize_u128(x),
        None => s.serialize_str(&v.to_string()),
    }
}
