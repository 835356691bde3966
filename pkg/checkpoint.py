"""
Checkpoint Manager for Resume Functionality
Lets long table searches (inequivalent ruler counts, the full STS(9) pass) resume after interruption
"""
import json
import os
import logging
from datetime import datetime
from typing import Any, Dict, List, Optional

from utils import ensure_dir_exists


class CheckpointManager:
    """Manages checkpoints for resuming an interrupted search"""

    def __init__(self, checkpoint_file: str, job: str):
        """
        Initialize checkpoint manager

        Args:
            checkpoint_file: Path to checkpoint JSON file
            job: Identity of the search (e.g. 'inequivalent k=3 qmax=500'); a checkpoint
                 written for another job is ignored
        """
        self.checkpoint_file = checkpoint_file
        self.job = job
        self.checkpoint_data = self._load()

    def _load(self) -> Dict:
        """Load checkpoint data from file"""
        if not os.path.exists(self.checkpoint_file):
            return self._create_empty_checkpoint()

        try:
            with open(self.checkpoint_file, 'r', encoding='utf-8') as f:
                data = json.load(f)
        except Exception as e:
            logging.warning(f"Error loading checkpoint: {e}. Starting fresh.")
            return self._create_empty_checkpoint()

        if data.get('job') != self.job:
            logging.warning(f"Checkpoint belongs to '{data.get('job')}', not '{self.job}'. Starting fresh.")
            return self._create_empty_checkpoint()
        logging.info(f"📋 Loaded checkpoint from {self.checkpoint_file}")
        return data

    def _create_empty_checkpoint(self) -> Dict:
        """Create empty checkpoint structure"""
        return {
            'job': self.job,
            'last_update': None,
            'items_completed': {},
            'completed': False
        }

    def save(self):
        """Save current checkpoint to disk"""
        self.checkpoint_data['last_update'] = datetime.now().isoformat()

        try:
            ensure_dir_exists(os.path.dirname(self.checkpoint_file))
            with open(self.checkpoint_file, 'w', encoding='utf-8') as f:
                json.dump(self.checkpoint_data, f, indent=2)
            logging.debug(f"💾 Checkpoint saved")
        except Exception as e:
            logging.error(f"Error saving checkpoint: {e}")

    def mark_item_complete(self, key: str, result: Any):
        """
        Record the result of one finished unit of work

        Args:
            key: Item identifier (e.g. the field order q)
            result: JSON-serializable result
        """
        self.checkpoint_data['items_completed'][key] = result
        self.save()
        logging.debug(f"✓ Item {key} completed")

    def is_item_complete(self, key: str) -> bool:
        return key in self.checkpoint_data['items_completed']

    def get_result(self, key: str) -> Optional[Any]:
        return self.checkpoint_data['items_completed'].get(key)

    def invalidate_item(self, key: str):
        """Forget one item so it is recomputed"""
        if self.checkpoint_data['items_completed'].pop(key, None) is not None:
            self.save()
            logging.info(f"🔄 Item {key} invalidated - will be recomputed")

    def get_completed_items(self) -> List[str]:
        return list(self.checkpoint_data['items_completed'])

    def mark_all_complete(self):
        """Mark the entire search as complete"""
        self.checkpoint_data['completed'] = True
        self.save()
        logging.info("✅ Search complete!")

    def is_complete(self) -> bool:
        return self.checkpoint_data['completed']

    def clear(self):
        """Clear checkpoint (start fresh)"""
        self.checkpoint_data = self._create_empty_checkpoint()
        if os.path.exists(self.checkpoint_file):
            try:
                os.remove(self.checkpoint_file)
                logging.info("🔄 Checkpoint cleared - starting fresh")
            except Exception as e:
                logging.error(f"Error clearing checkpoint: {e}")

    def get_progress_summary(self, total: Optional[int] = None) -> str:
        """Get a human-readable summary of progress"""
        if self.checkpoint_data['completed']:
            return "✅ Search completed"
        done = len(self.checkpoint_data['items_completed'])
        if done == 0:
            return "🔵 Not started"
        return f"✓ Items completed: {done}" + (f"/{total}" if total is not None else "")

    def should_resume(self) -> bool:
        """
        Determine if we should resume from checkpoint or start fresh

        Returns:
            True if there's partial progress to resume
        """
        if self.checkpoint_data['completed']:
            return False
        return len(self.checkpoint_data['items_completed']) > 0
