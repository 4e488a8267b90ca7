//! Parsing of the --group/--generators/--w1 command-line shorthand.

use routespace_core::error::{Error, Result};
use routespace_core::groups::{CyclicOrder, GroupKind, GroupSpec};

pub fn parse_group(spec: &str, generators: Option<&str>, w1: Option<&str>) -> Result<GroupSpec> {
    let (kind, count) = match spec.split_once(':') {
        None if spec == "trivial" => (GroupKind::Trivial, 0),
        Some(("free", rank)) => {
            let rank: usize = rank
                .parse()
                .map_err(|_| Error::Usage(format!("bad free-group rank '{rank}'")))?;
            (GroupKind::Free { rank }, rank)
        }
        Some(("product", orders)) | Some(("free_product", orders)) => {
            let orders = orders
                .split(',')
                .map(|tok| match tok.trim() {
                    "0" | "inf" => Ok(CyclicOrder::Infinite),
                    k => k
                        .parse::<u32>()
                        .map(CyclicOrder::Finite)
                        .map_err(|_| Error::Usage(format!("bad cyclic order '{k}'"))),
                })
                .collect::<Result<Vec<_>>>()?;
            let count = orders.len();
            (GroupKind::FreeProduct { orders }, count)
        }
        _ => {
            return Err(Error::Usage(format!(
                "unknown group '{spec}' (use trivial, free:N, or product:K1,K2,...)"
            )))
        }
    };
    let names: Vec<String> = match generators {
        Some(list) => list.split(',').map(|s| s.trim().to_string()).collect(),
        None => (0..count)
            .map(|i| {
                if count <= 26 {
                    ((b'a' + i as u8) as char).to_string()
                } else {
                    format!("g{i}")
                }
            })
            .collect(),
    };
    let w1: Vec<u8> = match w1 {
        Some(list) => list
            .split(',')
            .map(|tok| match tok.trim() {
                "0" => Ok(0u8),
                "1" => Ok(1),
                other => Err(Error::Usage(format!("w1 values must be 0 or 1, got '{other}'"))),
            })
            .collect::<Result<Vec<_>>>()?,
        None => vec![0; count],
    };
    GroupSpec::new(kind, names, w1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shorthand_forms() {
        assert!(parse_group("trivial", None, None).is_ok());
        let f2 = parse_group("free:2", None, None).unwrap();
        assert_eq!(f2.generator_names(), &["a", "b"]);
        let g = parse_group("product:2,inf", Some("t,a"), Some("1,0")).unwrap();
        assert_eq!(g.generator_names(), &["t", "a"]);
        assert!(!g.w1_is_zero());
        assert!(parse_group("ring:3", None, None).is_err());
    }
}
