//! The finite spin-½ Galilean boost matrix Δ^{1/2}(v, R).

use nalgebra::{Matrix2, Matrix3, Matrix4, Rotation3, UnitQuaternion, Vector3};
use num_complex::Complex64;

use super::SpinorError;

const ORTHOGONALITY_TOL: f64 = 1e-12;

/// Velocity and rotation of a homogeneous Galilean transformation `x' = Rx + vt`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoostParameters {
    v: Vector3<f64>,
    r: Matrix3<f64>,
}

impl BoostParameters {
    pub fn new(v: Vector3<f64>, r: Matrix3<f64>) -> Result<Self, SpinorError> {
        let defect = (r.transpose() * r - Matrix3::identity()).abs().max();
        if !(defect <= ORTHOGONALITY_TOL) {
            return Err(SpinorError::NonOrthogonal { defect });
        }
        let det = r.determinant();
        if det <= 0.0 {
            return Err(SpinorError::ImproperRotation { det });
        }
        Ok(Self { v, r })
    }

    pub fn pure_boost(v: Vector3<f64>) -> Self {
        Self {
            v,
            r: Matrix3::identity(),
        }
    }

    pub fn velocity(&self) -> &Vector3<f64> {
        &self.v
    }

    pub fn rotation(&self) -> &Matrix3<f64> {
        &self.r
    }
}

fn pauli2() -> [Matrix2<Complex64>; 3] {
    let o = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    [
        Matrix2::new(o, one, one, o),
        Matrix2::new(o, -i, i, o),
        Matrix2::new(one, o, o, -one),
    ]
}

fn sigma_dot(v: &Vector3<f64>) -> Matrix2<Complex64> {
    let s = pauli2();
    s[0] * Complex64::from(v.x) + s[1] * Complex64::from(v.y) + s[2] * Complex64::from(v.z)
}

/// SU(2) image of a proper rotation, on the branch with nonnegative trace.
pub fn spin_half_rotation(r: &Matrix3<f64>) -> Matrix2<Complex64> {
    let q = UnitQuaternion::from_rotation_matrix(&Rotation3::from_matrix_unchecked(*r));
    let mut w = q.w;
    let mut axis = q.imag();
    if w < 0.0 {
        w = -w;
        axis = -axis;
    }
    // exp(-iθ n·σ/2) = cos(θ/2) - i sin(θ/2) n·σ
    Matrix2::identity() * Complex64::from(w) - sigma_dot(&axis) * Complex64::new(0.0, 1.0)
}

/// Block lower-triangular `[[D, 0], [-½ σ·v D, D]]` in the (upper, lower) split.
pub fn build_boost_matrix(bp: &BoostParameters) -> Matrix4<Complex64> {
    let d = spin_half_rotation(&bp.r);
    let lower_left = sigma_dot(&bp.v) * d * Complex64::from(-0.5);
    let mut out = Matrix4::zeros();
    out.fixed_view_mut::<2, 2>(0, 0).copy_from(&d);
    out.fixed_view_mut::<2, 2>(2, 2).copy_from(&d);
    out.fixed_view_mut::<2, 2>(2, 0).copy_from(&lower_left);
    out
}

/// Max-norm distance between two matrices modulo an overall sign.
pub fn projective_distance(a: &Matrix4<Complex64>, b: &Matrix4<Complex64>) -> f64 {
    let plus = (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max);
    let minus = (a + b).iter().map(|z| z.norm()).fold(0.0, f64::max);
    plus.min(minus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rotation(axis: [f64; 3], angle: f64) -> Matrix3<f64> {
        let axis = nalgebra::Unit::new_normalize(Vector3::from(axis));
        *Rotation3::from_axis_angle(&axis, angle).matrix()
    }

    fn max_abs(m: &Matrix4<Complex64>) -> f64 {
        m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn identity_at_rest() {
        let d = build_boost_matrix(&BoostParameters::pure_boost(Vector3::zeros()));
        assert!(max_abs(&(d - Matrix4::identity())) < 1e-15);
    }

    #[test]
    fn pure_boosts_compose_additively() {
        let v1 = Vector3::new(0.3, -1.2, 0.5);
        let v2 = Vector3::new(-0.7, 0.1, 2.0);
        let lhs = build_boost_matrix(&BoostParameters::pure_boost(v1))
            * build_boost_matrix(&BoostParameters::pure_boost(v2));
        let rhs = build_boost_matrix(&BoostParameters::pure_boost(v1 + v2));
        assert!(max_abs(&(lhs - rhs)) < 1e-12);
    }

    #[test]
    fn rejects_non_orthogonal() {
        let mut r = Matrix3::identity();
        r[(0, 1)] = 1e-6;
        assert!(matches!(
            BoostParameters::new(Vector3::zeros(), r),
            Err(SpinorError::NonOrthogonal { .. })
        ));
        let reflect = Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, -1.0));
        assert!(matches!(
            BoostParameters::new(Vector3::zeros(), reflect),
            Err(SpinorError::ImproperRotation { .. })
        ));
    }

    #[test]
    fn spin_half_rotation_rotates_sigma() {
        let r = rotation([1.0, 2.0, -0.5], 2.1);
        let u = spin_half_rotation(&r);
        let v = Vector3::new(0.4, -0.3, 0.9);
        let lhs = u * sigma_dot(&v) * u.adjoint();
        let rhs = sigma_dot(&(r * v));
        assert!((lhs - rhs).iter().map(|z| z.norm()).fold(0.0, f64::max) < 1e-12);
        assert!((u.trace().re) >= 0.0);
    }

    #[test]
    fn upper_right_block_vanishes_for_random_transformations() {
        // fixed-seed LCG; 20 draws
        let mut state: u64 = 0x2545_f491_4f6c_dd1d;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        for _ in 0..20 {
            let r = rotation([next(), next(), next() + 1e-3], 3.0 * next());
            let v = Vector3::new(next(), next(), next()) * 5.0;
            let d = build_boost_matrix(&BoostParameters::new(v, r).unwrap());
            for i in 0..2 {
                for j in 2..4 {
                    assert_eq!(d[(i, j)], Complex64::new(0.0, 0.0));
                }
            }
        }
    }

    proptest! {
        #[test]
        fn group_law_is_projective(
            a1 in prop::array::uniform3(-1.0f64..1.0), t1 in -3.0f64..3.0,
            a2 in prop::array::uniform3(-1.0f64..1.0), t2 in -3.0f64..3.0,
            v1 in prop::array::uniform3(-4.0f64..4.0), v2 in prop::array::uniform3(-4.0f64..4.0),
        ) {
            prop_assume!(Vector3::from(a1).norm() > 1e-3 && Vector3::from(a2).norm() > 1e-3);
            let r1 = rotation(a1, t1);
            let r2 = rotation(a2, t2);
            let (v1, v2) = (Vector3::from(v1), Vector3::from(v2));
            let lhs = build_boost_matrix(&BoostParameters::new(v1, r1).unwrap())
                * build_boost_matrix(&BoostParameters::new(v2, r2).unwrap());
            let composed = BoostParameters::new(v1 + r1 * v2, r1 * r2).unwrap();
            prop_assert!(projective_distance(&lhs, &build_boost_matrix(&composed)) < 1e-12);
        }
    }
}
