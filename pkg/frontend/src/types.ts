/**
 * Response shapes of the /v1 analysis API.
 * Every numeric field is rendered verbatim; the client never recomputes
 * model values.
 */

export type Preset = 'improvement' | 'regression';

export interface SummaryResponse {
  snapshot_hash: string;
  packages: number;
  edges: number;
  scored_packages: number;
  tau: number;
  top_reach: { package: string; reach: number }[];
  filter_stats: Record<string, number>;
}

export interface SelectionRow {
  rank: number;
  package: string;
  share: number;
  cumulative: number;
  reach: number;
  pinned: boolean;
  selected: boolean;
}

export interface StrategyRow {
  label: string;
  package_count: number;
  ecosystem_fraction: number;
  improvement_share: number;
  regression_share: number;
  total_individuals: number;
  distinct_maintainers: number;
  single_maintainer_count: number;
  single_maintainer_fraction: number;
  contact_count: number;
  contact_fraction: number;
  donation_count: number;
  donation_fraction: number;
  contact_and_donation_count: number;
  contact_and_donation_fraction: number;
  excluded_count: number;
  excluded_fraction: number;
  unresolved_count: number;
}

export interface SelectionResponse {
  snapshot_hash: string;
  scenario: string;
  tau: number;
  achieved_share: number;
  selected: string[];
  pinned: string[];
  excluded: string[];
  rows: SelectionRow[];
  total_rows: number;
  offset: number;
  limit: number | null;
  evaluation: StrategyRow;
}

export interface PackageDetail {
  snapshot_hash: string;
  package: {
    name: string;
    raw_name: string;
    maintained_score: number | null;
    has_repository_link: boolean;
    has_contact_info: boolean;
    has_donation_link: boolean;
    download_count: number | null;
  };
  reach: number;
  pagerank: number;
  shares: Record<string, number | null>;
  owner_kind: string | null;
  dependency_count: number;
  dependent_count: number;
}

export interface CompareResponse {
  snapshot_hash: string;
  rows: StrategyRow[];
}

export interface LabeledList {
  label: string;
  packages: string[];
}

export interface SelectionRequest {
  preset: Preset;
  tau: number;
  pinned: string[];
  excluded: string[];
}
