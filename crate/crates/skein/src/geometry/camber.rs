//! Four-digit mean camber line. Height and slope are expressed per unit
//! chord; the section is a thin surface, so thickness never enters.

use super::GeometryError;

/// Height of the camber line at chord fraction `x`, per unit chord.
///
/// Two parabolic arcs meet at the camber crest `p` with matching value and
/// slope; both ends of the chord sit on z = 0.
pub fn camber_height(x: f64, m: f64, p: f64) -> Result<f64, GeometryError> {
    if !(0.0..=1.0).contains(&x) {
        return Err(GeometryError::ChordPosition { x });
    }
    if m == 0.0 {
        return Ok(0.0);
    }
    Ok(if x < p {
        m / (p * p) * (2.0 * p * x - x * x)
    } else {
        m / ((1.0 - p) * (1.0 - p)) * ((1.0 - 2.0 * p) + 2.0 * p * x - x * x)
    })
}

/// Slope dz/dx of the camber line at chord fraction `x`.
pub fn camber_slope(x: f64, m: f64, p: f64) -> Result<f64, GeometryError> {
    if !(0.0..=1.0).contains(&x) {
        return Err(GeometryError::ChordPosition { x });
    }
    if m == 0.0 {
        return Ok(0.0);
    }
    Ok(if x < p {
        2.0 * m / (p * p) * (p - x)
    } else {
        2.0 * m / ((1.0 - p) * (1.0 - p)) * (p - x)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // Hand-evaluated values for m = 0.09, p = 0.4:
    //   slope(0)   = 2*0.09/0.16 * 0.4  =  0.45
    //   slope(1)   = 2*0.09/0.36 * -0.6 = -0.30
    //   height(0.4) = m at the crest
    const M: f64 = 0.09;
    const P: f64 = 0.4;

    #[test]
    fn slope_at_leading_edge_matches_hand_value() {
        assert!((camber_slope(0.0, M, P).unwrap() - 0.45).abs() < 1e-15);
    }

    #[test]
    fn slope_at_trailing_edge_matches_hand_value() {
        assert!((camber_slope(1.0, M, P).unwrap() + 0.30).abs() < 1e-15);
    }

    #[test]
    fn slope_vanishes_at_crest() {
        assert_eq!(camber_slope(P, M, P).unwrap(), 0.0);
        // Approaching from the left the fore arc also flattens out.
        let eps = 1e-9;
        assert!(camber_slope(P - eps, M, P).unwrap().abs() < 1e-8);
    }

    #[test]
    fn arcs_meet_continuously_at_crest() {
        let eps = 1e-9;
        let left = camber_height(P - eps, M, P).unwrap();
        let right = camber_height(P + eps, M, P).unwrap();
        assert!((left - right).abs() < 1e-8);
        assert!((camber_height(P, M, P).unwrap() - M).abs() < 1e-15);
    }

    #[test]
    fn chord_ends_lie_on_the_chord_line() {
        assert_eq!(camber_height(0.0, M, P).unwrap(), 0.0);
        assert!(camber_height(1.0, M, P).unwrap().abs() < 1e-16);
    }

    #[test]
    fn flat_plate_is_flat_everywhere() {
        for i in 0..=10 {
            let x = i as f64 / 10.0;
            assert_eq!(camber_height(x, 0.0, 0.0).unwrap(), 0.0);
            assert_eq!(camber_slope(x, 0.0, 0.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn positions_outside_the_chord_are_rejected() {
        assert!(camber_slope(-0.01, M, P).is_err());
        assert!(camber_slope(1.01, M, P).is_err());
        assert!(camber_height(f64::NAN, M, P).is_err());
    }
}
