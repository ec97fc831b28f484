//! Input documents: line-delimited episode records, a reviews document,
//! IFS lists and choice tables.

use std::io::BufRead;

use serde::{Deserialize, Serialize};

use crate::choice_model::{ChoiceEpisode, ObjectId};
use crate::consistency::ChoiceFunctionTable;
use crate::error::{Error, Result};
use crate::info_index::IfsList;
use crate::trust_scoring::Review;

/// One line of the episode stream.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EpisodeRecord {
    pub reviewer_id: String,
    pub period: u32,
    pub catalog: Vec<ObjectId>,
    pub wishlist: Vec<ObjectId>,
    pub cart: Vec<ObjectId>,
    #[serde(rename = "final")]
    pub final_set: Vec<ObjectId>,
}

impl From<EpisodeRecord> for ChoiceEpisode {
    fn from(r: EpisodeRecord) -> Self {
        ChoiceEpisode::new(
            r.reviewer_id,
            r.period,
            r.catalog,
            r.wishlist,
            r.cart,
            r.final_set,
        )
    }
}

impl From<ChoiceEpisode> for EpisodeRecord {
    fn from(e: ChoiceEpisode) -> Self {
        EpisodeRecord {
            reviewer_id: e.reviewer_id,
            period: e.period,
            catalog: e.attainable,
            wishlist: e.wishlist,
            cart: e.cart,
            final_set: e.final_set,
        }
    }
}

/// Records that parsed, plus one error per line that did not.
#[derive(Debug, Default)]
pub struct EpisodeStream {
    pub episodes: Vec<ChoiceEpisode>,
    pub errors: Vec<Error>,
}

/// Reads one JSON record per line. Blank lines are skipped. An input with no
/// records at all is an error.
pub fn read_episodes(input: impl BufRead) -> Result<EpisodeStream> {
    let mut stream = EpisodeStream::default();
    for (idx, line) in input.lines().enumerate() {
        let line = line?;
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<EpisodeRecord>(&line) {
            Ok(rec) => stream.episodes.push(rec.into()),
            Err(e) => stream.errors.push(Error::Parse {
                line: line_no,
                message: e.to_string(),
            }),
        }
    }
    if stream.episodes.is_empty() && stream.errors.is_empty() {
        return Err(Error::Parse {
            line: 0,
            message: "episode input is empty".into(),
        });
    }
    Ok(stream)
}

pub fn write_episodes(episodes: &[ChoiceEpisode]) -> String {
    let mut out = String::new();
    for e in episodes {
        let rec = EpisodeRecord::from(e.clone());
        out.push_str(&serde_json::to_string(&rec).expect("episode record serializes"));
        out.push('\n');
    }
    out
}

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        message: e.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReviewsDocument {
    pub reviews: Vec<Review>,
}

pub fn parse_reviews(text: &str) -> Result<Vec<Review>> {
    Ok(serde_json::from_str::<ReviewsDocument>(text)
        .map_err(parse_error)?
        .reviews)
}

pub fn write_reviews(reviews: &[Review]) -> String {
    serde_json::to_string_pretty(&ReviewsDocument {
        reviews: reviews.to_vec(),
    })
    .expect("reviews serialize")
}

/// Parses and validates grades.
pub fn parse_ifs_list(text: &str) -> Result<IfsList> {
    let list: IfsList = serde_json::from_str(text).map_err(parse_error)?;
    list.validate()?;
    Ok(list)
}

pub fn write_ifs_list(list: &IfsList) -> String {
    serde_json::to_string_pretty(list).expect("ifs list serializes")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChoiceEntry {
    pub subset: Vec<ObjectId>,
    pub choice: ObjectId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChoiceTableDocument {
    pub ground_set: Vec<ObjectId>,
    pub choices: Vec<ChoiceEntry>,
}

impl ChoiceTableDocument {
    pub fn into_table(self) -> Result<ChoiceFunctionTable> {
        let mut t = ChoiceFunctionTable::new(self.ground_set)?;
        for entry in &self.choices {
            t.set(&entry.subset, &entry.choice)?;
        }
        Ok(t)
    }

    pub fn from_table(t: &ChoiceFunctionTable) -> Self {
        Self {
            ground_set: t.ground_set().to_vec(),
            choices: t
                .entries()
                .map(|(subset, choice)| ChoiceEntry {
                    subset,
                    choice: choice.clone(),
                })
                .collect(),
        }
    }
}

pub fn parse_choice_table(text: &str) -> Result<ChoiceFunctionTable> {
    serde_json::from_str::<ChoiceTableDocument>(text)
        .map_err(parse_error)?
        .into_table()
}

pub fn write_choice_table(t: &ChoiceFunctionTable) -> String {
    serde_json::to_string_pretty(&ChoiceTableDocument::from_table(t)).expect("table serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn episode_lines() {
        let text = r#"{"reviewer_id":"r","period":1,"catalog":["M","N"],"wishlist":["M"],"cart":["M"],"final":["M"]}

not json
{"reviewer_id":"r","period":2,"catalog":["M"],"wishlist":["M"],"cart":["M"],"final":["M"],"extra":1}
"#;
        let s = read_episodes(text.as_bytes()).unwrap();
        assert_eq!(s.episodes.len(), 1);
        assert_eq!(s.errors.len(), 2);
        assert!(matches!(s.errors[0], Error::Parse { line: 3, .. }));
        assert!(matches!(s.errors[1], Error::Parse { line: 4, .. }));
    }

    #[test]
    fn empty_episode_input() {
        assert!(read_episodes("\n\n".as_bytes()).is_err());
    }

    #[test]
    fn ifs_grades_are_checked() {
        let err = parse_ifs_list(r#"{"elements":[{"id":"bad","mu":0.7,"nu":0.5}]}"#).unwrap_err();
        assert!(err.to_string().contains("bad"));
    }

    #[test]
    fn choice_table_document() {
        let t = parse_choice_table(
            r#"{"ground_set":["a","b"],"choices":[
                {"subset":["a"],"choice":"a"},
                {"subset":["b"],"choice":"b"},
                {"subset":["a","b"],"choice":"b"}]}"#,
        )
        .unwrap();
        assert!(t.is_complete());
        assert_eq!(parse_choice_table(&write_choice_table(&t)).unwrap(), t);
        assert!(parse_choice_table(
            r#"{"ground_set":["a"],"choices":[{"subset":["a"],"choice":"z"}]}"#
        )
        .is_err());
    }
}
