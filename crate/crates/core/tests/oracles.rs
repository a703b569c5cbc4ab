mod common;

use std::sync::Arc;

use common::*;
use flagalg::char_poly::char_poly_k;
use flagalg::flags::{count_flags, flags, FlagSpace};
use flagalg::generators::*;
use flagalg::kl_poly::{char_poly1, kl_recursive};
use flagalg::mobius::{mobius_left, mobius_right};
use flagalg::polynomial::Polynomial;
use flagalg::whitney::{multi_indices, whitney_first, whitney_second, whitney_second_naive, MultiIndex};
use flagalg::Poset;

fn small_posets() -> Vec<Poset> {
    vec![
        figure1(),
        chain(2).unwrap(),
        boolean_lattice(2).unwrap(),
        partition_lattice(3).unwrap(),
        uniform_flats(2, 4).unwrap(),
        random_graded_bounded(7, 9),
    ]
}

#[test]
fn left_mobius_matches_linear_solve() {
    for p in small_posets() {
        let p = Arc::new(p);
        for k in 2..=4 {
            let mu = mobius_left(&FlagSpace::new(p.clone(), k).unwrap()).unwrap();
            let oracle = mobius_k_oracle(&p, k);
            assert_eq!(mu.values().len(), oracle.len());
            for (flag, value) in mu.iter() {
                assert_eq!(big(value), oracle[flag], "k={k} flag={flag:?}");
            }
        }
    }
}

#[test]
fn right_mobius_matches_linear_solve() {
    for p in small_posets() {
        let p = Arc::new(p);
        for k in 2..=3 {
            let mu = mobius_right(&FlagSpace::new(p.clone(), k).unwrap()).unwrap();
            let oracle = mobius_right_oracle(&p, k);
            for (flag, value) in mu.iter() {
                assert_eq!(big(value), oracle[flag], "k={k} flag={flag:?}");
            }
        }
    }
}

#[test]
fn figure1_rooted_value() {
    let p = figure1();
    let oracle = mobius_k_oracle(&p, 3);
    let one = p.index_of("1").unwrap();
    assert_eq!(oracle[&vec![0, 0, one]], 2.into());
}

#[test]
fn flag_enumeration_matches_brute_force() {
    for p in small_posets() {
        for k in 1..=4 {
            let expected = all_flags(&p, k);
            assert_eq!(flags(&p, k).unwrap(), expected);
            assert_eq!(count_flags(&p, k, None, None), expected.len() as u128);
        }
    }
}

#[test]
fn second_kind_against_enumeration() {
    for p in small_posets().into_iter().chain([boolean_lattice(3).unwrap(), partition_lattice(4).unwrap()]) {
        for k in 1..=3 {
            for index in multi_indices(p.top_rank(), k) {
                let naive = whitney_naive(&p, index.levels()) as i64;
                assert_eq!(whitney_second(&p, &index).unwrap(), naive);
                assert_eq!(whitney_second_naive(&p, &index).unwrap(), naive);
            }
        }
    }
}

fn stirling2(n: usize, k: usize) -> i64 {
    let mut s = vec![vec![0i64; n + 1]; n + 1];
    s[0][0] = 1;
    for i in 1..=n {
        for j in 1..=i {
            s[i][j] = j as i64 * s[i - 1][j] + s[i - 1][j - 1];
        }
    }
    s[n][k]
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

#[test]
fn level_sizes_of_generated_lattices() {
    for n in 1..=6 {
        let p = partition_lattice(n).unwrap();
        for i in 0..n {
            assert_eq!(whitney_second(&p, &MultiIndex::new(vec![i]).unwrap()).unwrap(), stirling2(n, n - i));
        }
    }
    for n in 1..=6 {
        for m in 1..=n {
            let p = uniform_flats(m, n).unwrap();
            for i in 0..m {
                assert_eq!(p.level(i).len() as i64, binomial(n, i), "U_{m},{n} level {i}");
            }
            assert_eq!(p.level(m).len(), 1);
        }
    }
}

#[test]
fn first_kind_rank_pairs() {
    for p in small_posets().into_iter().chain([boolean_lattice(3).unwrap()]) {
        let mu = mobius_classical(&p);
        for i in 0..=p.top_rank() {
            for j in i..=p.top_rank() {
                let oracle: i64 = p
                    .level(i)
                    .iter()
                    .flat_map(|&x| p.level(j).iter().map(move |&y| (x, y)))
                    .filter_map(|(x, y)| mu.get(&(x, y)))
                    .sum();
                assert_eq!(whitney_first(&p, &MultiIndex::new(vec![i, j]).unwrap()).unwrap(), oracle);
            }
        }
    }
}

#[test]
fn boolean_first_kind_signs() {
    // w_I(B_n) = (-1)^{i_1 + ... + i_k} W_I(B_n) for flags from the bottom
    for n in 1..=4 {
        let p = boolean_lattice(n).unwrap();
        for k in 2..=3 {
            for index in multi_indices(n, k).into_iter().filter(|i| i.levels()[0] == 0) {
                let sign = if index.levels().iter().sum::<usize>() % 2 == 0 { 1 } else { -1 };
                let expected = sign * multinomial(n, index.levels()) as i64;
                assert_eq!(whitney_first(&p, &index).unwrap(), expected, "{index}");
            }
        }
    }
    assert_eq!(whitney_first(&boolean_lattice(2).unwrap(), &MultiIndex::new(vec![0, 1]).unwrap()).unwrap(), -2);
    assert_eq!(whitney_first(&figure1(), &MultiIndex::new(vec![0, 2]).unwrap()).unwrap(), 2);
}

#[test]
fn characteristic_polynomial_against_classical_mobius() {
    for p in small_posets().into_iter().chain([partition_lattice(4).unwrap()]) {
        let chi = char_poly1(&p).unwrap();
        for t in -3..=3 {
            assert_eq!(chi.eval(&int(t)), chi1_at(&p, t));
        }
        assert_eq!(Polynomial::from_multi(&char_poly_k(&p, 1).unwrap()).unwrap(), chi);
    }
}

#[test]
fn known_kl_polynomials() {
    // partition lattices are the lattices of flats of the braid matroids
    assert_eq!(kl_recursive(&partition_lattice(5).unwrap()).unwrap(), Polynomial::from_coefficients(&[1, 5]));
    assert_eq!(kl_recursive(&partition_lattice(6).unwrap()).unwrap(), Polynomial::from_coefficients(&[1, 16, 15]));
    // uniform matroids U_{m-1,m} of rank 3 and 4
    assert_eq!(kl_recursive(&uniform_flats(3, 4).unwrap()).unwrap(), Polynomial::from_coefficients(&[1, 2]));
    assert_eq!(kl_recursive(&uniform_flats(4, 5).unwrap()).unwrap(), Polynomial::from_coefficients(&[1, 5]));
}
