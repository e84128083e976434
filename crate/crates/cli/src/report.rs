use std::fmt::{Display, Write as _};

/// A structured report: ordered `key = value` pairs, one per line.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KvDoc {
    entries: Vec<(String, String)>,
}

impl KvDoc {
    pub fn push(&mut self, key: impl Into<String>, value: impl Display) {
        let value = value.to_string().replace('\n', " ");
        self.entries.push((key.into(), value));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            let _ = writeln!(out, "{k} = {v}");
        }
        out
    }
}

/// Plain-text lines for people.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Text {
    out: String,
}

impl Text {
    pub fn line(&mut self, s: impl Display) {
        let _ = writeln!(self.out, "{s}");
    }

    pub fn blank(&mut self) {
        self.out.push('\n');
    }

    pub fn into_string(self) -> String {
        self.out
    }
}

pub fn join<T: Display>(items: &[T], sep: &str) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}
