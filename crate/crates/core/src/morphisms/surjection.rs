use std::collections::HashMap;
use std::hash::Hash;

use crate::CardinalityError;

/// A surjection from `0..classes.len()` onto `0..target_len` that only merges
/// elements carrying equal class labels.
///
/// Elements are taken in index order and every choice picks least elements:
/// the section `h` keeps the first member of each class, the classes'
/// representatives go to the first targets in order, the next unused
/// elements cover the remaining targets in order, and every other element
/// follows its representative.
///
/// Exists exactly when `#classes ≤ target_len ≤ classes.len()`.
pub fn quotient_surjection<K: Eq + Hash>(
    classes: &[K],
    target_len: usize,
) -> Result<Vec<usize>, CardinalityError> {
    if classes.is_empty() || target_len == 0 {
        return Err(CardinalityError::Empty);
    }
    if target_len > classes.len() {
        return Err(CardinalityError::TargetTooLarge {
            source_len: classes.len(),
            target: target_len,
        });
    }
    // representative[c] is the first element of class c; class_of[i] names
    // the class of element i by its position among representatives.
    let mut first_seen: HashMap<&K, usize> = HashMap::new();
    let mut representatives = Vec::new();
    let mut class_of = Vec::with_capacity(classes.len());
    for (i, key) in classes.iter().enumerate() {
        let class = *first_seen.entry(key).or_insert_with(|| {
            representatives.push(i);
            representatives.len() - 1
        });
        class_of.push(class);
    }
    if representatives.len() > target_len {
        return Err(CardinalityError::TooManyClasses {
            classes: representatives.len(),
            target: target_len,
        });
    }

    const UNSET: usize = usize::MAX;
    let mut f = vec![UNSET; classes.len()];
    // f0: S0 -> T0 = the first |S0| targets.
    for (class, &rep) in representatives.iter().enumerate() {
        f[rep] = class;
    }
    // f1: S1 = the first |T1| elements outside S0 -> T1 = the other targets.
    let mut next_target = representatives.len();
    for slot in f.iter_mut() {
        if next_target == target_len {
            break;
        }
        if *slot == UNSET {
            *slot = next_target;
            next_target += 1;
        }
    }
    // f2: the rest follow their representative.
    for (i, slot) in f.iter_mut().enumerate() {
        if *slot == UNSET {
            *slot = class_of[i];
        }
    }
    Ok(f)
}
