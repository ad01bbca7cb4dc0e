use crate::weno::WenoStencil;

/// Five-cell reconstruction with the coefficients of a [`WenoStencil`]
/// unpacked into fixed-size arrays for the time-stepping loop.
#[derive(Debug, Clone)]
pub(super) struct Weno5 {
    sub: [[f64; 3]; 3],
    full: [f64; 5],
    lead: [f64; 5],
    inv_gaps: [f64; 4],
    epsilon: f64,
}

impl Weno5 {
    pub(super) fn from_stencil(st: &WenoStencil<f64>) -> Self {
        let (sub, full, lead, inv_gaps) = st.coefficients();
        let params = st.params();
        assert!(params.stencil_size == 5 && params.r == 2 && params.s == 2);
        let mut s = [[0.0; 3]; 3];
        for (i, row) in s.iter_mut().enumerate() {
            row.copy_from_slice(&sub[3 * i..3 * i + 3]);
        }
        Weno5 {
            sub: s,
            full: full.try_into().unwrap(),
            lead: lead.try_into().unwrap(),
            inv_gaps: inv_gaps.try_into().unwrap(),
            epsilon: params.epsilon,
        }
    }

    #[inline]
    pub(super) fn value(&self, u: &[f64]) -> f64 {
        let u: &[f64; 5] = u.try_into().unwrap();
        let mut t = [0.0; 4];
        for j in 0..4 {
            let q = (u[j + 1] - u[j]) * self.inv_gaps[j];
            t[j] = q * q;
        }
        let ind = [t[0] + t[1], t[1] + t[2], t[2] + t[3]];
        let lead: f64 = (0..5).map(|k| self.lead[k] * u[k]).sum();
        let d = lead * lead;
        let ds = d * d;
        let mut w = [0.0; 3];
        let mut j = 0.0;
        for i in 0..3 {
            w[i] = 1.0 / (ind[i] * ind[i] + self.epsilon);
            j += w[i];
        }
        let large = ds > 1.0;
        let inv_ds = if large { 1.0 / ds } else { 0.0 };
        let mut total = 0.0;
        for wi in w.iter_mut() {
            *wi = if large { inv_ds + *wi } else { 1.0 + ds * *wi };
            total += *wi;
        }
        let mut blended = 0.0;
        for i in 0..3 {
            let p = self.sub[i][0] * u[i] + self.sub[i][1] * u[i + 1] + self.sub[i][2] * u[i + 2];
            blended += w[i] / total * p;
        }
        let prod = ds * j;
        let omega_global = if prod.is_finite() { 1.0 / (1.0 + prod) } else { 0.0 };
        let full: f64 = (0..5).map(|k| self.full[k] * u[k]).sum();
        omega_global * full + (1.0 - omega_global) * blended
    }
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::grid::{Framework, StencilGeometry};
    use crate::weno::{weno_params, WenoOptions};

    #[test]
    fn matches_generic_stencil() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let mut c = vec![-2.5f64];
            for _ in 0..5 {
                let last = *c.last().unwrap();
                c.push(last + rng.gen_range(0.2..2.0));
            }
            let lo = (c[2] + c[3]) / 2.0;
            let geom = StencilGeometry::normalized(c.clone(), lo.max(c[2])).unwrap();
            let st = WenoStencil::new(&geom, Framework::CellAverages, weno_params(5, 1e-100).unwrap(), WenoOptions::default())
                .unwrap();
            let fast = Weno5::from_stencil(&st);
            let mut scratch = st.scratch();
            for scale in [1e-8, 1.0, 1e6] {
                let mut u: Vec<f64> = (0..5).map(|_| scale * rng.gen_range(-1.0..1.0)).collect();
                if rng.gen_bool(0.3) {
                    u[rng.gen_range(0..5)] += 10.0 * scale;
                }
                let a = fast.value(&u);
                let b = st.value(&u, &mut scratch);
                assert!((a - b).abs() <= 1e-13 * scale.max(b.abs()), "{a} vs {b}");
            }
        }
    }
}
