//! Named relations that recur across gadgets, reductions and tests.

use super::{tuple_bit, Relation};

fn rel(name: &str, arity: usize, tuples: &[&str]) -> Relation {
    Relation::from_strs(name, arity, tuples.iter().copied()).expect("catalog relation")
}

/// `T = {1}`.
pub fn t() -> Relation {
    rel("T", 1, &["1"])
}

/// `F = {0}`.
pub fn f() -> Relation {
    rel("F", 1, &["0"])
}

/// `x ≠ y`.
pub fn neq() -> Relation {
    rel("NEQ", 2, &["01", "10"])
}

/// `x = y`.
pub fn eq() -> Relation {
    rel("EQ", 2, &["00", "11"])
}

/// `x → y`.
pub fn implies() -> Relation {
    rel("IMPL", 2, &["00", "01", "11"])
}

/// `x ∧ ¬y`.
pub fn and_not() -> Relation {
    rel("AND_NOT", 2, &["10"])
}

/// `x ∧ y`.
pub fn and2() -> Relation {
    rel("AND2", 2, &["11"])
}

/// `x ∨ y`.
pub fn or2() -> Relation {
    rel("OR2", 2, &["01", "10", "11"])
}

/// `¬x ∨ ¬y`.
pub fn nand2() -> Relation {
    rel("NAND2", 2, &["00", "01", "10"])
}

/// `x ∨ y ∨ z`.
pub fn or3() -> Relation {
    Relation::from_fn("OR3", 3, |t| t != 0).expect("catalog relation")
}

/// Not-all-equal on three coordinates.
pub fn nae3() -> Relation {
    Relation::from_fn("NAE3", 3, |t| t != 0 && t != 0b111).expect("catalog relation")
}

/// Exactly one of three coordinates is true.
pub fn one_in_three() -> Relation {
    rel("ONE_IN_THREE", 3, &["001", "010", "100"])
}

/// `x ⊕ y ⊕ z = 1`.
pub fn xor3() -> Relation {
    Relation::from_fn("XOR3", 3, |t| t.count_ones() % 2 == 1).expect("catalog relation")
}

/// `(x = y) ∧ z`, coordinates `(x, y, z)`.
pub fn eq_and_t() -> Relation {
    rel("EQ_AND_T", 3, &["001", "111"])
}

/// `(x = y) ∧ ¬z`, coordinates `(x, y, z)`.
pub fn eq_and_f() -> Relation {
    rel("EQ_AND_F", 3, &["000", "110"])
}

/// `R'(x, y, z) = (x ∨ y) ∧ (y = z)`: bijunctive, not positive, same co-clone as `OR2`.
pub fn or2_with_copy() -> Relation {
    rel("OR2_EQ", 3, &["011", "100", "111"])
}

/// A generalized clause: `signs[i]` true means coordinate `i` occurs positively.
pub fn clause(name: &str, signs: &[bool]) -> Relation {
    let k = signs.len();
    Relation::from_fn(name, k, |t| {
        signs
            .iter()
            .enumerate()
            .any(|(i, &pos)| tuple_bit(t, i, k) == pos)
    })
    .expect("nonempty clause is nontrivial")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clause_truth_tables() {
        // x ∨ ¬y ∨ z fails only on 010
        let c = clause("C", &[true, false, true]);
        assert_eq!(c.non_members().collect::<Vec<_>>(), vec![0b010]);
        assert!(clause("P", &[true]).same_tuples(&t()));
        assert!(clause("N", &[false, false]).same_tuples(&nand2()));
    }

    #[test]
    fn catalog_sizes() {
        assert_eq!(nae3().len(), 6);
        assert_eq!(xor3().tuples().collect::<Vec<_>>(), vec![1, 2, 4, 7]);
        assert_eq!(or3().len(), 7);
    }
}
