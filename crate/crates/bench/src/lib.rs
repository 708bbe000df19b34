//! Fixtures shared by the benchmarks.

use swtqft::{Chamber, CobordismWord, Move, SpMatrix, SpincParams, Surface};

/// A product of transvections along `a_i`, `b_i` and `a_i + a_{i+1}` at genus `g`.
pub fn mixed_symplectic(g: usize) -> SpMatrix {
    let s = Surface::new(g);
    let n = s.rank();
    let mut m = SpMatrix::identity(s);
    for i in 0..n {
        let mut v = vec![0; n];
        v[i] = 1;
        if i + 2 < n {
            v[i + 2] = 1;
        }
        let t = SpMatrix::transvection(s, &v, if i % 2 == 0 { 1 } else { -1 }).unwrap();
        m = m.mul(&t).unwrap();
    }
    m
}

/// `H1, twist, H2` around a genus-`g` surface with `d = 0` in the `+` chamber.
pub fn handle_word(g: usize) -> CobordismWord {
    let params = SpincParams::with_default_eta(0, Chamber::Plus).unwrap();
    let moves = vec![Move::H1, Move::Twist(mixed_symplectic(g + 1)), Move::H2];
    CobordismWord::new(g, params, moves, mixed_symplectic(g)).unwrap()
}
