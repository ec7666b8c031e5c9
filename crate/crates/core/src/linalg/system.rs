use crate::field::Field;

/// An F-linear map F^domain → F^codomain, stored as a dense codomain×domain
/// matrix.
#[derive(Clone, Debug)]
pub struct FLinearSystem<F: Field> {
    field: F,
    domain: usize,
    codomain: usize,
    rows: Vec<Vec<F::Elem>>,
}

impl<F: Field> FLinearSystem<F> {
    pub fn from_rows(field: F, domain: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == domain), "row length differs from domain dimension");
        let codomain = rows.len();
        FLinearSystem { field, domain, codomain, rows }
    }

    pub fn from_columns(field: F, codomain: usize, columns: Vec<Vec<F::Elem>>) -> Self {
        assert!(columns.iter().all(|c| c.len() == codomain), "column length differs from codomain dimension");
        let domain = columns.len();
        let rows = (0..codomain).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
        FLinearSystem { field, domain, codomain, rows }
    }

    pub fn zero_map(field: F, dim: usize) -> Self {
        let rows = vec![vec![field.zero(); dim]; dim];
        FLinearSystem { field, domain: dim, codomain: dim, rows }
    }

    pub fn identity_map(field: F, dim: usize) -> Self {
        let rows =
            (0..dim).map(|r| (0..dim).map(|c| if r == c { field.one() } else { field.zero() }).collect()).collect();
        FLinearSystem { field, domain: dim, codomain: dim, rows }
    }

    pub fn domain_dim(&self) -> usize {
        self.domain
    }

    pub fn codomain_dim(&self) -> usize {
        self.codomain
    }

    pub fn entry(&self, r: usize, c: usize) -> &F::Elem {
        &self.rows[r][c]
    }

    /// Dimension of the image.
    pub fn rank(&self) -> usize {
        if self.domain == 0 || self.codomain == 0 {
            return 0;
        }
        self.field.rank(self.rows.clone())
    }

    /// Exact dimension of the solution space of the homogeneous system.
    pub fn kernel_dim(&self) -> usize {
        self.domain - self.rank()
    }
}

/// Dimension of the kernel of `system` over F.
pub fn kernel_dim_f<F: Field>(system: &FLinearSystem<F>) -> usize {
    system.kernel_dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn zero_and_identity() {
        for d in [0, 1, 5] {
            assert_eq!(kernel_dim_f(&FLinearSystem::zero_map(Rationals, d)), d);
            assert_eq!(kernel_dim_f(&FLinearSystem::identity_map(Rationals, d)), 0);
        }
    }

    #[test]
    fn rectangular() {
        let k = Rationals;
        let rows = vec![vec![k.from_i64(1), k.from_i64(2), k.from_i64(3)]];
        let sys = FLinearSystem::from_rows(k, 3, rows);
        assert_eq!(sys.rank(), 1);
        assert_eq!(sys.kernel_dim(), 2);
    }
}
