use num_complex::Complex64;

/// Parses `0.3`, `-1e-2i` or `0.3+0.1i`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    t.parse::<Complex64>().map_err(|_| format!("not a complex number: {s:?}"))
}

/// Comma-separated complex coordinates.
pub fn parse_point(s: &str) -> Result<Vec<Complex64>, String> {
    s.split(',').map(parse_complex).collect()
}

/// `lo,hi` with `lo ≤ hi`.
pub fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected lo,hi, got {s:?}"))?;
    let lo: f64 = a.trim().parse().map_err(|_| format!("bad bound {a:?}"))?;
    let hi: f64 = b.trim().parse().map_err(|_| format!("bad bound {b:?}"))?;
    if lo.is_nan() || hi.is_nan() || lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok((lo, hi))
}

/// `a,b,c` orbifold orders.
pub fn parse_orders(s: &str) -> Result<[u32; 3], String> {
    let v: Vec<u32> = s
        .split(',')
        .map(|x| x.trim().parse().map_err(|_| format!("bad order {x:?}")))
        .collect::<Result<_, _>>()?;
    v.try_into().map_err(|v: Vec<u32>| format!("expected three orders, got {}", v.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("0.3+0.1i").unwrap(), Complex64::new(0.3, 0.1));
        assert_eq!(parse_complex("-2").unwrap(), Complex64::new(-2.0, 0.0));
        assert_eq!(parse_complex("0.5i").unwrap(), Complex64::new(0.0, 0.5));
        assert_eq!(parse_complex(" 1 - 2i ").unwrap(), Complex64::new(1.0, -2.0));
        assert!(parse_complex("x").is_err());
    }

    #[test]
    fn points_and_ranges() {
        assert_eq!(
            parse_point("1,0.5-0.5i").unwrap(),
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.5, -0.5)]
        );
        assert_eq!(parse_range("-1,1").unwrap(), (-1.0, 1.0));
        assert!(parse_range("1,-1").is_err());
        assert!(parse_range("1").is_err());
    }

    #[test]
    fn orders() {
        assert_eq!(parse_orders("2,3,5").unwrap(), [2, 3, 5]);
        assert!(parse_orders("2,3").is_err());
        assert!(parse_orders("2,a,3").is_err());
    }
}
