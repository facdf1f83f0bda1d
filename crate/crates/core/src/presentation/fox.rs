use super::{FreeWord, GroupRingElement, PresentationError};

impl FreeWord {
    /// Fox derivative ∂ᵢ of this word in the integral group ring.
    ///
    /// Walks the syllables with the running prefix `p`; a syllable `xᵢⁿ`
    /// contributes `p·(1 + xᵢ + … + xᵢⁿ⁻¹)` for `n > 0` and
    /// `−p·(xᵢ⁻¹ + xᵢ⁻² + … + xᵢⁿ)` for `n < 0`.
    pub fn fox_derivative(&self, generator: usize) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        let mut prefix = FreeWord::identity();
        for &(g, e) in self.syllables() {
            if g == generator {
                if e > 0 {
                    for k in 0..e {
                        out.add_term(prefix.multiply(&FreeWord::power_of(g, k)), 1);
                    }
                } else {
                    for k in 1..=(-e) {
                        out.add_term(prefix.multiply(&FreeWord::power_of(g, -k)), -1);
                    }
                }
            }
            prefix = prefix.multiply(&FreeWord::power_of(g, e));
        }
        out
    }
}

/// Fox derivative with a range check against the ambient generator count.
pub fn fox_derivative(
    word: &FreeWord,
    generator: usize,
    generator_count: usize,
) -> Result<GroupRingElement, PresentationError> {
    if generator >= generator_count {
        return Err(PresentationError::GeneratorOutOfRange { index: generator, count: generator_count });
    }
    if let Some(max) = word.max_generator() {
        if max >= generator_count {
            return Err(PresentationError::GeneratorOutOfRange { index: max, count: generator_count });
        }
    }
    Ok(word.fox_derivative(generator))
}

/// Evaluates `Σᵢ (∂ᵢw)(xᵢ − 1)` in the group ring; equals `w − 1`.
pub fn fox_expansion(word: &FreeWord, generator_count: usize) -> GroupRingElement {
    let one = GroupRingElement::one();
    let mut total = GroupRingElement::zero();
    for i in 0..generator_count {
        let xi_minus_one = &GroupRingElement::from_word(FreeWord::generator(i)) - &one;
        total = &total + &(&word.fox_derivative(i) * &xi_minus_one);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(terms: &[(&[(usize, i32)], i64)]) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (w, c) in terms {
            out.add_term(FreeWord::from_syllables(w.iter().copied()), *c);
        }
        out
    }

    #[test]
    fn base_cases() {
        assert_eq!(FreeWord::generator(0).fox_derivative(0), GroupRingElement::one());
        assert!(FreeWord::generator(1).fox_derivative(0).is_zero());
        assert_eq!(
            FreeWord::power_of(0, -1).fox_derivative(0),
            gr(&[(&[(0, -1)], -1)])
        );
    }

    #[test]
    fn product_of_squares() {
        // ∂ₖ(x₁²…x_h²) = (x₁²…x_{k−1}²)(xₖ + 1)
        let h = 4;
        let r = FreeWord::from_syllables((0..h).map(|i| (i, 2)));
        for k in 0..h {
            let prefix = FreeWord::from_syllables((0..k).map(|i| (i, 2)));
            let mut expected = GroupRingElement::zero();
            expected.add_term(prefix.multiply(&FreeWord::generator(k)), 1);
            expected.add_term(prefix.clone(), 1);
            assert_eq!(r.fox_derivative(k), expected, "k = {k}");
        }
    }

    #[test]
    fn cube_augmentation() {
        // ∂₁(x₁³) = 1 + x₁ + x₁²
        let d = FreeWord::power_of(0, 3).fox_derivative(0);
        assert_eq!(d, gr(&[(&[], 1), (&[(0, 1)], 1), (&[(0, 2)], 1)]));
        assert_eq!(d.augmentation(), 3);
    }

    #[test]
    fn negative_power_closed_form() {
        let d = FreeWord::power_of(0, -3).fox_derivative(0);
        assert_eq!(d, gr(&[(&[(0, -1)], -1), (&[(0, -2)], -1), (&[(0, -3)], -1)]));
        assert_eq!(d.augmentation(), -3);
    }

    #[test]
    fn fundamental_identity_on_commutator() {
        let r = FreeWord::from_syllables([(0, 1), (1, 1), (0, -1), (1, -1)]);
        let lhs = &GroupRingElement::from_word(r.clone()) - &GroupRingElement::one();
        assert_eq!(fox_expansion(&r, 2), lhs);
    }

    #[test]
    fn range_checked() {
        let w = FreeWord::generator(0);
        assert!(fox_derivative(&w, 2, 2).is_err());
        assert!(fox_derivative(&FreeWord::generator(3), 0, 2).is_err());
        assert_eq!(fox_derivative(&w, 0, 2).unwrap(), GroupRingElement::one());
    }
}
