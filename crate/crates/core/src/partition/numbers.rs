use rug::Integer;

/// `p(0), ..., p(n_max)` by Euler's pentagonal-number recurrence.
pub fn partition_numbers(n_max: usize) -> Vec<Integer> {
    let mut p: Vec<Integer> = Vec::with_capacity(n_max + 1);
    p.push(Integer::from(1));
    for n in 1..=n_max {
        let mut acc = Integer::new();
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > n {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            if k % 2 == 1 {
                acc += &p[n - g1];
                if g2 <= n {
                    acc += &p[n - g2];
                }
            } else {
                acc -= &p[n - g1];
                if g2 <= n {
                    acc -= &p[n - g2];
                }
            }
        }
        p.push(acc);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        let p = partition_numbers(200);
        assert_eq!(p[0], 1);
        assert_eq!(p[4], 5);
        assert_eq!(p[9], 30);
        assert_eq!(p[100], 190_569_292);
        assert_eq!(p[200], Integer::from(3_972_999_029_388u64));
    }

    #[test]
    fn ramanujan_congruences() {
        let p = partition_numbers(400);
        for n in 0..80 {
            assert!(p[5 * n + 4].is_divisible_u(5));
            if 7 * n + 5 <= 400 {
                assert!(p[7 * n + 5].is_divisible_u(7));
            }
            if 11 * n + 6 <= 400 {
                assert!(p[11 * n + 6].is_divisible_u(11));
            }
        }
    }
}
