//! Text formats shared by every command.
//!
//! A group file is a `degree n` line followed by one generator per line in
//! 1-based disjoint-cycle notation. An action file is a group file followed
//! by `orbits k` and `k` lines of 1-based point lists. `#` starts a comment;
//! blank lines are ignored.

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub degree: usize,
    pub generators: Vec<Permutation>,
}

impl GroupSpec {
    pub fn build(&self) -> Result<PermGroup> {
        PermGroup::new(self.degree, self.generators.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionSpec {
    pub group: GroupSpec,
    /// 0-based orbit point lists, when the file declares them.
    pub orbits: Option<Vec<Vec<usize>>>,
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_count(line_no: usize, line: &str, keyword: &str) -> Result<usize> {
    let rest = line
        .strip_prefix(keyword)
        .ok_or_else(|| Error::parse(line_no, 1, format!("expected `{keyword} <n>`")))?;
    rest.trim()
        .parse()
        .map_err(|_| Error::parse(line_no, keyword.len() + 2, format!("bad count in {line:?}")))
}

pub fn parse_group_file(text: &str) -> Result<GroupSpec> {
    let spec = parse_action_file(text)?;
    if spec.orbits.is_some() {
        return Err(Error::InvalidInput(
            "group file must not contain an orbits section".into(),
        ));
    }
    Ok(spec.group)
}

pub fn parse_action_file(text: &str) -> Result<ActionSpec> {
    let mut lines = content_lines(text);
    let (first_no, first) = lines
        .next()
        .ok_or_else(|| Error::parse(1, 1, "empty file: expected `degree <n>`"))?;
    let degree = parse_count(first_no, first, "degree")?;
    let mut generators = Vec::new();
    let mut orbits = None;
    while let Some((no, line)) = lines.next() {
        if line.starts_with("orbits") {
            let k = parse_count(no, line, "orbits")?;
            let mut parts = Vec::with_capacity(k);
            for _ in 0..k {
                let (pno, pline) = lines
                    .next()
                    .ok_or_else(|| Error::parse(no, 1, format!("expected {k} orbit lines")))?;
                let mut pts = Vec::new();
                for tok in pline.split(|c: char| c == ',' || c.is_whitespace()) {
                    if tok.is_empty() {
                        continue;
                    }
                    let v: usize = tok
                        .parse()
                        .map_err(|_| Error::parse(pno, 1, format!("bad point {tok:?}")))?;
                    if v == 0 || v > degree {
                        return Err(Error::parse(pno, 1, format!("point {v} out of range")));
                    }
                    pts.push(v - 1);
                }
                parts.push(pts);
            }
            if let Some((extra, _)) = lines.next() {
                return Err(Error::parse(extra, 1, "unexpected content after orbits"));
            }
            orbits = Some(parts);
            break;
        }
        let g = Permutation::parse_cycles(degree, line)
            .map_err(|e| Error::parse(no, 1, e.to_string()))?;
        generators.push(g);
    }
    Ok(ActionSpec {
        group: GroupSpec { degree, generators },
        orbits,
    })
}

pub fn write_group_file(degree: usize, generators: &[Permutation]) -> String {
    let mut s = format!("degree {degree}\n");
    for g in generators {
        s.push_str(&g.to_cycle_string());
        s.push('\n');
    }
    s
}

pub fn write_action_file(degree: usize, generators: &[Permutation], orbits: &[Vec<usize>]) -> String {
    let mut s = write_group_file(degree, generators);
    s.push_str(&format!("orbits {}\n", orbits.len()));
    for o in orbits {
        let pts: Vec<String> = o.iter().map(|p| (p + 1).to_string()).collect();
        s.push_str(&pts.join(" "));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_group_file_with_comments() {
        let text = "# S4\ndegree 4\n\n(1 2)   # transposition\n(1 2 3 4)\n";
        let g = parse_group_file(text).unwrap();
        assert_eq!(g.degree, 4);
        assert_eq!(g.generators.len(), 2);
        assert_eq!(g.build().unwrap().order_usize(), Some(24));
    }

    #[test]
    fn parses_action_file() {
        let text = "degree 5\n(1 2)\n(3 4 5)\norbits 2\n1 2\n3 4 5\n";
        let a = parse_action_file(text).unwrap();
        assert_eq!(a.orbits.unwrap(), vec![vec![0, 1], vec![2, 3, 4]]);
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_group_file("degree 3\n(1 2)\n(1 5)\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        assert!(parse_group_file("").is_err());
        assert!(parse_group_file("deg 3").is_err());
    }

    #[test]
    fn writer_roundtrip() {
        let g = parse_group_file("degree 4\n(1 2)(3 4)\n()\n").unwrap();
        let text = write_group_file(g.degree, &g.generators);
        assert_eq!(parse_group_file(&text).unwrap(), g);
        let a = write_action_file(2, &[Permutation::identity(2)], &[vec![0], vec![1]]);
        assert!(parse_action_file(&a).unwrap().orbits.is_some());
    }
}
