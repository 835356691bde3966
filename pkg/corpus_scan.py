"""
Incremental corpus detection - only re-verify new/changed certificates
"""
import os
import json
import logging
from typing import Dict, List, Set, Tuple

from config import CERT_EXTENSION
from utils import ensure_dir_exists


def load_verified_signatures(scan_cache_file: str) -> Dict[str, str]:
    """Signatures of the certificates that verified on the last run ({} when there was none)"""
    if not os.path.exists(scan_cache_file):
        return {}
    try:
        with open(scan_cache_file, 'r', encoding='utf-8') as f:
            return json.load(f)
    except (OSError, ValueError) as e:
        logging.warning(f"Unreadable scan cache {scan_cache_file}: {e}. Re-verifying everything.")
        return {}


def save_verified_signatures(scan_cache_file: str, signatures: Dict[str, str]):
    ensure_dir_exists(os.path.dirname(scan_cache_file))
    with open(scan_cache_file, 'w', encoding='utf-8') as f:
        json.dump(signatures, f, indent=2, sort_keys=True)


def certificate_signature(cert_path: str) -> str:
    """mtime + size of a certificate file; any edit changes it"""
    stat = os.stat(cert_path)
    return f"{stat.st_mtime}_{stat.st_size}"


def detect_changes(current_certs: Dict[str, str],
                   verified_certs: Dict[str, str]) -> Tuple[Set[str], Set[str], Set[str]]:
    """
    Compare the corpus on disk with the certificates verified last time

    Args:
        current_certs: {certificate path: signature} for the corpus now
        verified_certs: {certificate path: signature} recorded after the last verification

    Returns:
        Tuple of (added_certs, edited_certs, removed_certs)
    """
    on_disk = set(current_certs)
    known = set(verified_certs)
    added_certs = on_disk - known
    removed_certs = known - on_disk
    edited_certs = {path for path in on_disk & known if current_certs[path] != verified_certs[path]}
    return added_certs, edited_certs, removed_certs


def list_certificates(corpus_folder: str) -> List[str]:
    """All certificate files directly inside the corpus folder, sorted by name"""
    if not os.path.isdir(corpus_folder):
        logging.error(f"Corpus folder not found: {corpus_folder}")
        return []
    return sorted(
        os.path.join(corpus_folder, name) for name in os.listdir(corpus_folder)
        if name.endswith(CERT_EXTENSION) and os.path.isfile(os.path.join(corpus_folder, name))
    )


def incremental_corpus_scan(corpus_folder: str, scan_cache_file: str) -> Tuple[List[str], Set[str]]:
    """
    Scan the corpus and report which certificates changed since the last scan

    Args:
        corpus_folder: Directory of certificates
        scan_cache_file: Where to store scan cache

    Returns:
        Tuple of (all_certificates, certificates_to_verify)
    """
    current = {path: certificate_signature(path) for path in list_certificates(corpus_folder)}
    added, edited, removed = detect_changes(current, load_verified_signatures(scan_cache_file))
    if removed:
        logging.info(f"🔄 {len(removed)} certificate(s) removed since last scan")
    return sorted(current), added | edited


def record_scan(corpus_folder: str, scan_cache_file: str, verified_ok: Set[str]):
    """
    Remember the signatures of the certificates that verified

    Failing certificates are left out so the next incremental run retries them.
    """
    signatures = {path: certificate_signature(path) for path in list_certificates(corpus_folder)
                  if path in verified_ok}
    save_verified_signatures(scan_cache_file, signatures)
