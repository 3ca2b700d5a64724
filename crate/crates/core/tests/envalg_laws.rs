//! Commutation and composition laws of the matrix powers in U(gl(m)),
//! checked exhaustively after PBW normalization.

#![allow(clippy::needless_range_loop)]

use kahlergrad::envalg::{Gl, PbwElement};
use kahlergrad::Budget;

fn delta(a: usize, b: usize) -> bool {
    a == b
}

fn table(gl: &mut Gl, q_max: u32, tilde: bool) -> Vec<Vec<Vec<PbwElement>>> {
    gl.e_power_table(q_max, tilde).unwrap()
}

#[test]
fn generators_act_on_powers() {
    for m in 1..=3 {
        let mut gl = Gl::new(m, Budget::default()).unwrap();
        let e = table(&mut gl, 3, false);
        let t = table(&mut gl, 3, true);
        let zero = PbwElement::zero(m);
        for q in 0..=3usize {
            for i in 0..m {
                for j in 0..m {
                    let g = gl.generator(i, j).unwrap();
                    for k in 0..m {
                        for l in 0..m {
                            // [e_ij, e^q_kl] = d_jk e^q_il - d_il e^q_kj
                            let lhs = gl.commutator(&g, &e[q][k][l]).unwrap();
                            let mut rhs = zero.clone();
                            if delta(j, k) {
                                rhs = rhs.add(&e[q][i][l]);
                            }
                            if delta(i, l) {
                                rhs = rhs.sub(&e[q][k][j]);
                            }
                            assert_eq!(lhs, rhs, "m={m} q={q} ij={i}{j} kl={k}{l}");

                            // [e_ij, e~^q_kl] = d_jl e~^q_ki - d_ik e~^q_jl
                            let lhs = gl.commutator(&g, &t[q][k][l]).unwrap();
                            let mut rhs = zero.clone();
                            if delta(j, l) {
                                rhs = rhs.add(&t[q][k][i]);
                            }
                            if delta(i, k) {
                                rhs = rhs.sub(&t[q][j][l]);
                            }
                            assert_eq!(lhs, rhs, "tilde m={m} q={q} ij={i}{j} kl={k}{l}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn powers_compose() {
    for m in 1..=3 {
        let mut gl = Gl::new(m, Budget::default()).unwrap();
        for tilde in [false, true] {
            let e = table(&mut gl, 4, tilde);
            for p in 0..=4usize {
                for q in 0..=4 - p {
                    for k in 0..m {
                        for l in 0..m {
                            let mut acc = PbwElement::zero(m);
                            for i in 0..m {
                                acc = acc.add(&gl.mul(&e[p][k][i], &e[q][i][l]).unwrap());
                            }
                            assert_eq!(
                                acc,
                                e[p + q][k][l],
                                "tilde={tilde} m={m} p={p} q={q} kl={k}{l}"
                            );
                        }
                    }
                }
            }
        }
    }
}
