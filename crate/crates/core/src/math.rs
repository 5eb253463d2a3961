//! Float math shim: `std` intrinsics when available, `libm` otherwise.

#![allow(dead_code)]

macro_rules! shim {
    ($($name:ident => $libm:ident),* $(,)?) => {
        $(
            #[cfg(feature = "std")]
            #[inline(always)]
            pub fn $name(x: f64) -> f64 {
                f64::$name(x)
            }
            #[cfg(not(feature = "std"))]
            #[inline(always)]
            pub fn $name(x: f64) -> f64 {
                libm::$libm(x)
            }
        )*
    };
}

shim! {
    sqrt => sqrt,
    sin => sin,
    cos => cos,
    asin => asin,
    acos => acos,
    atan => atan,
    abs => fabs,
    floor => floor,
    round => round,
}

#[cfg(feature = "std")]
#[inline(always)]
pub fn atan2(y: f64, x: f64) -> f64 {
    f64::atan2(y, x)
}
#[cfg(not(feature = "std"))]
#[inline(always)]
pub fn atan2(y: f64, x: f64) -> f64 {
    libm::atan2(y, x)
}

#[cfg(feature = "std")]
#[inline(always)]
pub fn hypot(x: f64, y: f64) -> f64 {
    f64::hypot(x, y)
}
#[cfg(not(feature = "std"))]
#[inline(always)]
pub fn hypot(x: f64, y: f64) -> f64 {
    libm::hypot(x, y)
}
