//! Instance generators shared by the integration and acceptance tests.
#![allow(unused_imports)]

pub use mercode::selftest::{
    all_polys, bivariate_instance, brute_roots, func_instance, nonzero, ode_instance, random_poly, random_poly_upto,
    times_y_minus,
};
