//! The k-ary Ackermann function over arbitrary-precision naturals.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Default limit on evaluation steps.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

/// `A_k(args)` for `k ≥ 2`, evaluated without native recursion.
pub fn ackermann_k(k: usize, args: &[BigUint], budget: u64) -> Result<BigUint> {
    if k < 2 {
        return Err(Error::Invalid(format!("arity must be at least 2, got {k}")));
    }
    if args.len() != k {
        return Err(Error::Invalid(format!(
            "expected {k} arguments, got {}",
            args.len()
        )));
    }
    let mut cur: Vec<BigUint> = args.to_vec();
    // Each pending frame holds the first k-1 arguments of an outer call
    // waiting for its last argument.
    let mut pending: Vec<Vec<BigUint>> = Vec::new();
    let mut steps = 0u64;
    loop {
        steps += 1;
        if steps > budget {
            return Err(Error::Budget(format!(
                "Ackermann evaluation exceeded {budget} steps"
            )));
        }
        let last = k - 1;
        let pivot = (0..last).rev().find(|&i| !cur[i].is_zero());
        match pivot {
            None => {
                let value = &cur[last] + 1u32;
                match pending.pop() {
                    None => return Ok(value),
                    Some(mut frame) => {
                        frame.push(value);
                        cur = frame;
                    }
                }
            }
            Some(i) if i == last - 1 => {
                if cur[last].is_zero() {
                    cur[i] -= 1u32;
                    cur[last] = BigUint::one();
                } else {
                    let mut outer: Vec<BigUint> = cur[..last].to_vec();
                    outer[i] -= 1u32;
                    pending.push(outer);
                    cur[last] -= 1u32;
                }
            }
            Some(i) => {
                let x = cur[last].clone();
                cur[i] -= 1u32;
                cur[i + 1] = x;
            }
        }
    }
}

/// Convenience wrapper for small arguments.
pub fn ackermann_small(k: usize, args: &[u64]) -> Result<BigUint> {
    let big: Vec<BigUint> = args.iter().map(|&a| BigUint::from(a)).collect();
    ackermann_k(k, &big, DEFAULT_BUDGET)
}
